#pragma once

#include <vector>

#include "hardytree/exponents.hpp"
#include "hardytree/norm.hpp"

namespace hardytree {

// Finite truncations u_0..u_N, w_0..w_N of the one-dimensional weight
// sequences. Entries may be zero (unlike tree weights).
struct Sequences {
    std::vector<double> u;
    std::vector<double> w;
};

// The classical discrete Hardy constant M_{u,w}. For 1 < p <= q < inf it is
// sup_m (sum_{n>=m} w_n^q)^{1/q} (sum_{n<=m} u_n^{p'})^{1/p'}; for
// 1 <= q < p <= inf it is the series
// (sum_m [(sum_{n>=m} w_n^q)^{1/p} (sum_{n<=m} u_n^{p'})^{1/p'}]^r w_m^q)^{1/r}
// with r = pq/(p-q) (r = q when p = inf). Other exponent pairs are rejected.
double bennett_constant(const Sequences& s, const Exponents& e);

// l_p -> l_q norm of the lower-triangular kernel w_n u_k (k <= n): the chain
// special case of the tree operator, computed by the oracle dispatch.
NormEstimate hardy_norm_oracle(const Sequences& s, const Exponents& e,
                               const NormOptions& opts = {});

} // namespace hardytree
