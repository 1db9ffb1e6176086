#include "hardytree/hardy1d.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hardytree/errors.hpp"
#include "hardytree/kernel.hpp"

namespace hardytree {

namespace {

void check_sequences(const Sequences& s) {
    if (s.u.empty() || s.u.size() != s.w.size())
        throw InvalidInput("sequences must be non-empty and of equal length");
    for (double v : s.u)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw InvalidInput("sequence entries must be non-negative and finite");
    for (double v : s.w)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw InvalidInput("sequence entries must be non-negative and finite");
}

} // namespace

double bennett_constant(const Sequences& s, const Exponents& e) {
    check_sequences(s);
    const std::size_t n = s.u.size();
    const double pc = e.p_conj();  // finite in both admissible regimes

    const bool regime_a = e.p_val() > 1.0 && !e.p().is_infinite() && e.p_le_q() &&
                          !e.q().is_infinite();
    const bool regime_b = e.regime() == Regime::p_gt_q;
    if (!regime_a && !regime_b)
        throw InvalidInput("bennett_constant needs 1 < p <= q < inf or 1 <= q < p <= inf");
    const double qv = e.q_val();

    // Prefix sums of u^{p'} and tail sums of w^q.
    std::vector<double> upow(n), wtail(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) upow[i] = std::pow(s.u[i], pc);
    for (std::size_t i = n; i-- > 0;) wtail[i] = wtail[i + 1] + std::pow(s.w[i], qv);

    if (regime_a) {
        double best = 0.0, uprefix = 0.0;
        for (std::size_t m = 0; m < n; ++m) {
            uprefix += upow[m];
            best = std::max(best, std::pow(wtail[m], 1.0 / qv) * std::pow(uprefix, 1.0 / pc));
        }
        return best;
    }

    const double r = e.pq_over_p_minus_q();
    const double pe = e.p().is_infinite() ? 0.0 : 1.0 / e.p_val();
    double acc = 0.0, uprefix = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
        uprefix += upow[m];
        const double inner = std::pow(wtail[m], pe) * std::pow(uprefix, 1.0 / pc);
        acc += std::pow(inner, r) * std::pow(s.w[m], qv);
    }
    return std::pow(acc, 1.0 / r);
}

NormEstimate hardy_norm_oracle(const Sequences& s, const Exponents& e, const NormOptions& opts) {
    check_sequences(s);
    const std::size_t n = s.u.size();
    if (n > kDefaultMatrixCap)
        throw SizeCapExceeded("sequence length " + std::to_string(n) +
                              " exceeds the dense matrix cap");
    std::vector<double> entries(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k <= i; ++k) entries[i * n + k] = s.w[i] * s.u[k];
    return operator_norm(KernelMatrix::from_dense(n, std::move(entries)), e, opts);
}

} // namespace hardytree
