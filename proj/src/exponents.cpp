#include "hardytree/exponents.hpp"
#include "hardytree/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hardytree {

Rational Rational::of(std::int64_t n, std::int64_t d) {
    if (d == 0) throw InvalidInput("rational with zero denominator");
    if (d < 0) { n = -n; d = -d; }
    const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    return Rational{n, d};
}

Exponent Exponent::from_double(double v) {
    if (std::isnan(v) || v < 1.0)
        throw InvalidInput("exponent must lie in [1, inf], got " + std::to_string(v));
    Exponent e;
    e.value_ = v;
    e.exact_.reset();
    if (!std::isinf(v) && v == std::floor(v) && std::abs(v) < 1e15)
        e.exact_ = Rational::of(static_cast<std::int64_t>(v), 1);
    return e;
}

Exponent Exponent::from_rational(Rational r) {
    if (r.num < r.den)
        throw InvalidInput("exponent must lie in [1, inf], got " + std::to_string(r.to_double()));
    Exponent e;
    e.value_ = r.to_double();
    e.exact_ = Rational::of(r.num, r.den);
    return e;
}

Exponent Exponent::infinity() {
    Exponent e;
    e.value_ = std::numeric_limits<double>::infinity();
    e.exact_.reset();
    return e;
}

Exponent Exponent::parse(const std::string& text) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
            s.end());
    if (s.empty()) throw InvalidInput("empty exponent literal");
    if (s == "inf" || s == "Inf" || s == "INF") return infinity();

    const auto parse_int = [&](const std::string& t) -> std::int64_t {
        std::size_t pos = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(t, &pos);
        } catch (const std::exception&) {
            throw InvalidInput("bad exponent literal '" + text + "'");
        }
        if (pos != t.size()) throw InvalidInput("bad exponent literal '" + text + "'");
        return v;
    };

    if (const auto slash = s.find('/'); slash != std::string::npos) {
        const std::int64_t n = parse_int(s.substr(0, slash));
        const std::int64_t d = parse_int(s.substr(slash + 1));
        if (d <= 0) throw InvalidInput("bad exponent literal '" + text + "'");
        return from_rational(Rational::of(n, d));
    }
    if (const auto dot = s.find('.'); dot != std::string::npos) {
        const std::string frac = s.substr(dot + 1);
        if (frac.size() > 15) throw InvalidInput("exponent literal too precise: '" + text + "'");
        const std::int64_t whole = dot == 0 ? 0 : parse_int(s.substr(0, dot));
        std::int64_t den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        const std::int64_t n = whole * den + (frac.empty() ? 0 : parse_int(frac));
        return from_rational(Rational::of(n, den));
    }
    return from_rational(Rational::of(parse_int(s), 1));
}

Exponent Exponent::conjugate() const {
    if (value_ == 1.0) return infinity();
    if (is_infinite()) return from_double(1.0);
    if (exact_) {
        // (a/b)' = a/(a-b)
        return from_rational(Rational::of(exact_->num, exact_->num - exact_->den));
    }
    return from_double(value_ / (value_ - 1.0));
}

std::string Exponent::str() const {
    if (is_infinite()) return "inf";
    if (exact_ && exact_->den == 1) return std::to_string(exact_->num);
    if (exact_) return std::to_string(exact_->num) + "/" + std::to_string(exact_->den);
    std::string s = std::to_string(value_);
    return s;
}

Exponents::Exponents(Exponent p, Exponent q) : p_(p), q_(q) {
    p_conj_ = p_.conjugate().value();
    q_conj_ = q_.conjugate().value();
    if (p_.exact() && q_.exact()) {
        // cross-multiplied comparison, exact
        const auto& a = *p_.exact();
        const auto& b = *q_.exact();
        const auto lhs = a.num * b.den;
        const auto rhs = b.num * a.den;
        regime_ = lhs < rhs ? Regime::p_lt_q : lhs > rhs ? Regime::p_gt_q : Regime::p_eq_q;
    } else {
        const double pv = p_.value(), qv = q_.value();
        regime_ = pv < qv ? Regime::p_lt_q : pv > qv ? Regime::p_gt_q : Regime::p_eq_q;
    }
}

double Exponents::pq_over_p_minus_q() const {
    if (regime_ != Regime::p_gt_q)
        throw InvalidInput("p*q/(p-q) requires q < p");
    if (p_.is_infinite()) return q_.value();
    if (p_.exact() && q_.exact()) {
        // (a/b * c/d) / (a/b - c/d) = ac / (ad - cb)
        const auto& pr = *p_.exact();
        const auto& qr = *q_.exact();
        return Rational::of(pr.num * qr.num, pr.num * qr.den - qr.num * pr.den).to_double();
    }
    return p_.value() * q_.value() / (p_.value() - q_.value());
}

double power_sum_norm(const double* begin, const double* end, double r) {
    if (r < 1.0) throw InvalidInput("norm exponent must be >= 1");
    if (begin == end) return 0.0;
    if (std::isinf(r)) {
        double m = 0.0;
        for (const double* it = begin; it != end; ++it) m = std::max(m, std::abs(*it));
        return m;
    }
    double s = 0.0;
    for (const double* it = begin; it != end; ++it) s += std::pow(std::abs(*it), r);
    return std::pow(s, 1.0 / r);
}

} // namespace hardytree
