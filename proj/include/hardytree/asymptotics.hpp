#pragma once

#include <functional>
#include <string>
#include <utility>

#include "hardytree/exponents.hpp"

namespace hardytree {

// A nonnegative function of y >= 1 addressed through l = log2(y), so
// arguments like y = 2^4000 stay representable. Evaluation throws
// InvalidInput when the handle returns a negative or non-finite value; an
// underflow to zero is passed through.
struct SlowlyVarying {
    std::string label = "one";
    std::function<double(double)> eval_log2 = [](double) { return 1.0; };

    double operator()(double log2_y) const;
};

SlowlyVarying sv_one();               // constant 1
SlowlyVarying sv_log2_2y();           // log2(2y) = l + 1
SlowlyVarying sv_inv_log2();          // 1 / log2(y) = 1 / l
SlowlyVarying sv_power(double a);     // y^a = 2^{a l}
// Accepts "one", "log2-2y", "inv-log2", "pow:<a>".
SlowlyVarying sv_parse(const std::string& spec);

// Result of a truncated supremum/tail-sum evaluation. `value` is +inf when
// the divergence heuristics fire; `partial` always holds the supremum
// actually computed over the truncated range.
struct TailBound {
    double value = 0.0;
    double partial = 0.0;
    bool diverged = false;
    int arg = 0;        // index attaining the truncated supremum
    int tail_cap = 0;
    // Integral-style estimate of the dropped tail of the inner sum, assuming
    // the locally measured power-law decay continues; NaN when no tail sum
    // is involved or the terms vanish.
    double remainder = 0.0;
};

// Level weights u_j = 2^{theta s j / q} Psi_u(2^{s j}),
// w_j = 2^{-theta s j / q} Psi_w(2^{s j}).
std::pair<double, double> example1_weights(double theta, int s, const SlowlyVarying& psi_u,
                                           const SlowlyVarying& psi_w, const Exponent& q, int j);

// M_{j0} = sup_{j >= j0} Psi_u(2^{sj}) (sum_{i >= j} Psi_w^q(2^{si})
// Lambda*(2^{si}) / Lambda*(2^{sj}))^{1/q}, with both the sum and the
// supremum truncated at tail_cap. Divergence is flagged when the tail terms
// decay no faster than i^{-1.05} (measured between tail_cap/2 and tail_cap)
// or the supremum is attained at the truncation boundary.
TailBound example1_bound(int j0, const Exponent& q, const SlowlyVarying& psi_u,
                         const SlowlyVarying& psi_w, const SlowlyVarying& lambda_star, int s,
                         int tail_cap);

struct Example2Params {
    double gamma_star = 0.0;
    double alpha_u = 0.0;
    double alpha_w = 0.0;
    SlowlyVarying rho_u;
    SlowlyVarying rho_w;
    SlowlyVarying tau_star;
    int j0 = 1;  // case 1: supremum over j >= j0 >= 1
    int k0 = 0;  // case 2: dyadic base, arguments 2^{k0+k}
};

// Case 1 (needs -alpha_w + 1/q + gamma*/q < 0): sup_{j >= j0} of
// j^{-alpha + 1/q + 1/p'} rho(j) with alpha = alpha_u + alpha_w and
// rho = rho_u rho_w. Case 2 (needs that exponent and -alpha_u + 1/p' -
// gamma*/q to vanish to 1e-12): sup_{k >= 0} rho_u(2^{k0+k})
// (sum_{t >= k} rho_w^q(2^{k0+t}) tau*(2^{k0+t}) / tau*(2^{k0+k}))^{1/q}.
TailBound example2_bound(int case_id, const Example2Params& params, const Exponents& e,
                         int tail_cap);

// Grid check of t^{-eps} <= f(ty)/f(y) <= t^{eps} over t, y in
// {2^0, ..., 2^{grid_max_exp}}: c_low = min of the ratio times t^{eps}
// (want >= some positive constant), c_high = max of the ratio times t^{-eps}
// (want bounded).
struct SlowVariationReport {
    double eps = 0.0;
    double c_low = 0.0;
    double c_high = 0.0;
    int grid_max_exp = 0;
};

SlowVariationReport check_slow_variation(const SlowlyVarying& f, double eps,
                                         int grid_max_exp = 20);

} // namespace hardytree
