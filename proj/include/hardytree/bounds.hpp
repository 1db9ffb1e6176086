#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "hardytree/cuts.hpp"
#include "hardytree/exponents.hpp"
#include "hardytree/tree.hpp"

namespace hardytree {

// A bound value together with the vertex attaining it; ties go to the
// smallest vertex id.
struct VertexBound {
    double value = 0.0;
    VertexId witness = kNoVertex;
};

// The cut-supremum value and the lexicographically smallest cut attaining it.
struct CutBound {
    double value = 0.0;
    Cut witness;
};

struct Hypothesis1Report {
    double K = 1.0;      // max of the branching numbers and the u edge ratios
    double lambda = 0.0; // largest realized l0-step subtree-norm ratio
    int l0 = 1;
    bool satisfied = false; // lambda < 1
};

// Named quantities produced by one bound computation, plus the metadata
// needed to reproduce it.
struct BoundReport {
    std::map<std::string, double> quantities;
    std::map<std::string, std::string> metadata;
};

// ||w||_{l_q} over the union of the subtrees hanging from the Gamma vertices.
double residual_weight_norm(const WeightedTree& wt, const Exponent& q, const Cut& cut);

// sup over vertices of u(xi) * ||w||_{l_q(subtree(xi))}.
VertexBound sup_product(const WeightedTree& wt, const Exponent& q);

// sup over xi >= xi_star of (sum_{path(xi_star, xi)} u^{p'})^{1/p'} *
// ||w||_{l_q(subtree(xi))}; attained by f proportional to u^{p'-1} on the
// path, so it bounds the operator norm from below with constant one.
VertexBound path_lower_bound(const WeightedTree& wt, const Exponents& e, VertexId xi_star);

// max over all cuts rooted at xi_star of residual_weight_norm / beta. Needs
// p <= q, where the two-sided comparison with the operator norm holds.
CutBound cut_supremum(const WeightedTree& wt, const Exponents& e, VertexId xi_star,
                      std::size_t cap = kDefaultCutCap);

// K bounds the branching numbers and the child/parent u ratios; lambda is
// the largest ratio ||w||_{l_q(subtree(xi''))} / ||w||_{l_q(subtree(xi)))}
// over descendants xi'' exactly l0 levels below xi.
Hypothesis1Report check_theorem1_hypotheses(const WeightedTree& wt, const Exponent& q, int l0);

} // namespace hardytree
