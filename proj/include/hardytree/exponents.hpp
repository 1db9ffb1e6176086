#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>

namespace hardytree {

// Exact fraction with positive denominator, used to keep exponent arithmetic
// like p*q/(p-q) free of cancellation error when p and q are close.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Rational of(std::int64_t n, std::int64_t d);
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// A summability exponent in [1, inf]. Carries an exact rational form when the
// value was given as one (integers, "3/2", finite decimals).
class Exponent {
public:
    Exponent() = default;

    static Exponent from_double(double v);
    static Exponent from_rational(Rational r);
    static Exponent infinity();

    // Accepts integers, finite decimals, fractions like "3/2", and "inf".
    static Exponent parse(const std::string& text);

    double value() const { return value_; }
    bool is_infinite() const { return value_ == std::numeric_limits<double>::infinity(); }
    const std::optional<Rational>& exact() const { return exact_; }

    // Conjugate exponent: 1 <-> inf, otherwise p/(p-1).
    Exponent conjugate() const;

    std::string str() const;

private:
    double value_ = 2.0;
    std::optional<Rational> exact_ = Rational{2, 1};
};

enum class Regime { p_lt_q, p_eq_q, p_gt_q };

// Exponent pair (p, q) with cached conjugates and the p-vs-q regime flag.
// The members are private so the caches can never drift from the pair.
struct Exponents {
    Exponents() : Exponents(Exponent::from_double(2.0), Exponent::from_double(2.0)) {}
    Exponents(Exponent p, Exponent q);

    const Exponent& p() const { return p_; }
    const Exponent& q() const { return q_; }
    double p_val() const { return p_.value(); }
    double q_val() const { return q_.value(); }
    double p_conj() const { return p_conj_; }
    double q_conj() const { return q_conj_; }
    Regime regime() const { return regime_; }
    bool p_le_q() const { return regime_ != Regime::p_gt_q; }

    // q < p only. Exact rational evaluation of p*q/(p-q) when both exponents
    // carry exact forms; p = inf gives the limit value q.
    double pq_over_p_minus_q() const;

private:
    Exponent p_;
    Exponent q_;
    double p_conj_ = 2.0;
    double q_conj_ = 2.0;
    Regime regime_ = Regime::p_eq_q;
};

// (sum_{x in support} |x|^r)^{1/r}; max for r = inf; 0 on an empty range.
// Throws InvalidInput for r < 1. Declared here because both the tree and the
// 1D machinery need it with extended-value conventions.
double power_sum_norm(const double* begin, const double* end, double r);

} // namespace hardytree
