#include "hardytree/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "hardytree/errors.hpp"

namespace hardytree {

double SlowlyVarying::operator()(double log2_y) const {
    const double v = eval_log2(log2_y);
    if (!std::isfinite(v) || v < 0.0)
        throw InvalidInput("slowly varying handle '" + label + "' is negative or non-finite at log2(y)=" +
                           std::to_string(log2_y));
    return v;
}

SlowlyVarying sv_one() { return {"one", [](double) { return 1.0; }}; }

SlowlyVarying sv_log2_2y() {
    return {"log2-2y", [](double l) { return l + 1.0; }};
}

SlowlyVarying sv_inv_log2() {
    return {"inv-log2", [](double l) { return 1.0 / l; }};
}

SlowlyVarying sv_power(double a) {
    return {"pow:" + std::to_string(a), [a](double l) { return std::exp2(a * l); }};
}

SlowlyVarying sv_parse(const std::string& spec) {
    if (spec == "one") return sv_one();
    if (spec == "log2-2y") return sv_log2_2y();
    if (spec == "inv-log2") return sv_inv_log2();
    if (spec.rfind("pow:", 0) == 0) {
        try {
            return sv_power(std::stod(spec.substr(4)));
        } catch (const std::exception&) {
            throw InvalidInput("bad exponent in slowly varying spec '" + spec + "'");
        }
    }
    throw InvalidInput("unknown slowly varying spec '" + spec +
                       "' (expected one, log2-2y, inv-log2, pow:<a>)");
}

std::pair<double, double> example1_weights(double theta, int s, const SlowlyVarying& psi_u,
                                           const SlowlyVarying& psi_w, const Exponent& q, int j) {
    if (!(theta > 0.0)) throw InvalidInput("theta must be positive");
    if (s < 1) throw InvalidInput("s must be a positive integer");
    if (j < 0) throw InvalidInput("level j must be non-negative");
    const double qe = q.is_infinite() ? 0.0 : 1.0 / q.value();
    const double l = static_cast<double>(s) * j;
    return {std::exp2(theta * l * qe) * psi_u(l), std::exp2(-theta * l * qe) * psi_w(l)};
}

namespace {

constexpr double kDecayExponentFloor = 1.05;

// Local power-law exponent of the tail terms between indices half and cap:
// f(i) ~ i^{-a}. Returns +inf when the term at the cap vanishes.
double tail_decay_exponent(double f_half, double f_cap, double half, double cap) {
    if (f_cap <= 0.0) return std::numeric_limits<double>::infinity();
    if (f_half <= 0.0) return 0.0;  // terms grew from zero: no decay
    return -(std::log(f_cap) - std::log(f_half)) / (std::log(cap) - std::log(half));
}

struct SupState {
    double best = -1.0;
    int arg = 0;

    void offer(double value, int index) {
        if (value > best) {
            best = value;
            arg = index;
        }
    }
};

} // namespace

TailBound example1_bound(int j0, const Exponent& q, const SlowlyVarying& psi_u,
                         const SlowlyVarying& psi_w, const SlowlyVarying& lambda_star, int s,
                         int tail_cap) {
    if (s < 1) throw InvalidInput("s must be a positive integer");
    if (j0 < 0) throw InvalidInput("j0 must be non-negative");
    if (q.is_infinite()) throw InvalidInput("example1_bound needs finite q");
    if (tail_cap < j0 + 16) throw InvalidInput("tail_cap too small for the requested j0");
    const double qv = q.value();

    // Tail terms of the inner sum and their suffix sums over [j0, cap].
    const int count = tail_cap - j0 + 1;
    std::vector<double> term(count), suffix(count);
    for (int i = 0; i < count; ++i) {
        const double l = static_cast<double>(s) * (j0 + i);
        term[i] = std::pow(psi_w(l), qv) * lambda_star(l);
    }
    double acc = 0.0;
    for (int i = count - 1; i >= 0; --i) suffix[i] = acc += term[i];

    SupState sup;
    for (int i = 0; i < count; ++i) {
        const double l = static_cast<double>(s) * (j0 + i);
        sup.offer(psi_u(l) * std::pow(suffix[i] / lambda_star(l), 1.0 / qv), j0 + i);
    }

    TailBound out;
    out.tail_cap = tail_cap;
    out.partial = sup.best;
    out.arg = sup.arg;

    const int half = j0 + count / 2;
    const double a = tail_decay_exponent(term[half - j0], term[count - 1],
                                         static_cast<double>(half), static_cast<double>(tail_cap));
    const bool tail_slow = a <= kDecayExponentFloor;
    const bool sup_at_boundary = sup.arg >= tail_cap - std::max(1, count / 20);
    out.diverged = tail_slow || sup_at_boundary || !(suffix[0] < 1e300);
    if (std::isinf(a))
        out.remainder = 0.0;
    else if (out.diverged)
        out.remainder = std::numeric_limits<double>::quiet_NaN();
    else
        out.remainder = term[count - 1] * tail_cap / (a - 1.0);
    out.value = out.diverged ? std::numeric_limits<double>::infinity() : sup.best;
    return out;
}

TailBound example2_bound(int case_id, const Example2Params& params, const Exponents& e,
                         int tail_cap) {
    const double qe = e.q().is_infinite() ? 0.0 : 1.0 / e.q_val();
    const double pce = std::isinf(e.p_conj()) ? 0.0 : 1.0 / e.p_conj();
    const double w_exponent = -params.alpha_w + qe + params.gamma_star * qe;

    if (case_id == 1) {
        if (!(w_exponent < 0.0))
            throw InvalidInput("case 1 needs -alpha_w + 1/q + gamma*/q < 0");
        if (params.j0 < 1) throw InvalidInput("j0 must be at least 1");
        if (tail_cap < params.j0 + 16) throw InvalidInput("tail_cap too small for j0");
        const double expo = -(params.alpha_u + params.alpha_w) + qe + pce;
        SupState sup;
        for (int j = params.j0; j <= tail_cap; ++j) {
            const double l = std::log2(static_cast<double>(j));
            sup.offer(std::pow(static_cast<double>(j), expo) * params.rho_u(l) * params.rho_w(l),
                      j);
        }
        TailBound out;
        out.tail_cap = tail_cap;
        out.partial = sup.best;
        out.arg = sup.arg;
        out.remainder = std::numeric_limits<double>::quiet_NaN();
        out.diverged = sup.arg >= tail_cap - std::max(1, (tail_cap - params.j0) / 20) ||
                       !(sup.best < 1e300);
        out.value = out.diverged ? std::numeric_limits<double>::infinity() : sup.best;
        return out;
    }
    if (case_id != 2) throw InvalidInput("case must be 1 or 2");

    const double u_exponent = -params.alpha_u + pce - params.gamma_star * qe;
    if (std::abs(w_exponent) > 1e-12 || std::abs(u_exponent) > 1e-12)
        throw InvalidInput("case 2 needs -alpha_w + 1/q + gamma*/q = 0 and "
                           "-alpha_u + 1/p' - gamma*/q = 0 (to 1e-12)");
    if (e.q().is_infinite()) throw InvalidInput("case 2 needs finite q");
    if (params.k0 < 0) throw InvalidInput("k0 must be non-negative");
    if (tail_cap < 16) throw InvalidInput("tail_cap too small");
    const double qv = e.q_val();

    const int count = tail_cap + 1;  // k, t range over 0..tail_cap
    std::vector<double> term(count), suffix(count);
    for (int t = 0; t < count; ++t) {
        const double l = static_cast<double>(params.k0) + t;
        term[t] = std::pow(params.rho_w(l), qv) * params.tau_star(l);
    }
    double acc = 0.0;
    for (int t = count - 1; t >= 0; --t) suffix[t] = acc += term[t];

    SupState sup;
    for (int k = 0; k < count; ++k) {
        const double l = static_cast<double>(params.k0) + k;
        sup.offer(params.rho_u(l) * std::pow(suffix[k] / params.tau_star(l), 1.0 / qv), k);
    }

    TailBound out;
    out.tail_cap = tail_cap;
    out.partial = sup.best;
    out.arg = sup.arg;
    const int half = count / 2;
    const double a = tail_decay_exponent(term[half], term[count - 1],
                                         static_cast<double>(params.k0 + half),
                                         static_cast<double>(params.k0 + tail_cap));
    const bool tail_slow = a <= kDecayExponentFloor;
    const bool sup_at_boundary = sup.arg >= tail_cap - std::max(1, count / 20);
    out.diverged = tail_slow || sup_at_boundary || !(suffix[0] < 1e300);
    if (std::isinf(a))
        out.remainder = 0.0;
    else if (out.diverged)
        out.remainder = std::numeric_limits<double>::quiet_NaN();
    else
        out.remainder = term[count - 1] * (params.k0 + tail_cap) / (a - 1.0);
    out.value = out.diverged ? std::numeric_limits<double>::infinity() : sup.best;
    return out;
}

SlowVariationReport check_slow_variation(const SlowlyVarying& f, double eps, int grid_max_exp) {
    if (!(eps > 0.0)) throw InvalidInput("eps must be positive");
    if (grid_max_exp < 1) throw InvalidInput("grid_max_exp must be at least 1");
    SlowVariationReport rep;
    rep.eps = eps;
    rep.grid_max_exp = grid_max_exp;
    rep.c_low = std::numeric_limits<double>::infinity();
    rep.c_high = 0.0;
    for (int at = 0; at <= grid_max_exp; ++at) {
        for (int ay = 0; ay <= grid_max_exp; ++ay) {
            const double ratio = f(static_cast<double>(at + ay)) / f(static_cast<double>(ay));
            rep.c_low = std::min(rep.c_low, ratio * std::exp2(eps * at));
            rep.c_high = std::max(rep.c_high, ratio * std::exp2(-eps * at));
        }
    }
    return rep;
}

} // namespace hardytree
