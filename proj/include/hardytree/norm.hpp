#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hardytree/exponents.hpp"
#include "hardytree/kernel.hpp"
#include "hardytree/tree.hpp"

namespace hardytree {

enum class NormMethod {
    closed_form_col,    // p = 1 (max column norm) or q = 1 (dual column sums)
    closed_form_row,    // q = inf (max row norm) or p = inf (image of all-ones)
    spectral,           // p = q = 2, power iteration on A^T A
    multistart_ascent,  // general case, alternating maximization from many starts
};

const char* name(NormMethod m);

struct NormOptions {
    std::uint64_t seed = 0;
    double tol = 1e-10;
    int starts = 32;
    int max_iterations = 10000;
    // Overrides the method dispatch for cross-validation. Only spectral and
    // multistart_ascent may be forced; spectral additionally requires p=q=2.
    std::optional<NormMethod> force;
};

struct NormEstimate {
    double value = 0.0;
    // Maximizer with ||witness||_p = 1 and witness >= 0. Indexed like the
    // operator input: matrix column rank for operator_norm, vertex id for
    // tree_operator_norm.
    std::vector<double> witness;
    NormMethod method = NormMethod::multistart_ascent;
    bool converged = true;
    int starts = 0;
    std::uint64_t seed = 0;
};

// l_p -> l_q norm of a non-negative matrix. The value is always re-evaluated
// as ||A*witness||_q before returning, so it is attained and hence a valid
// lower bound even when `converged` is false.
NormEstimate operator_norm(const KernelMatrix& m, const Exponents& e, const NormOptions& opts = {});

// Same estimate computed matrix-free in O(n) per operator application, for
// trees too large to densify.
NormEstimate tree_operator_norm(const WeightedTree& wt, const Exponents& e,
                                const NormOptions& opts = {});

struct ForestNorm {
    double value = 0.0;
    std::vector<NormEstimate> components;
    bool converged = true;
};

// Norm of the block-diagonal operator over disjoint trees: the component
// maximum when p <= q, and the l_r combination with 1/r = 1/q - 1/p when
// p > q (where a maximizer spreads mass across blocks).
ForestNorm forest_operator_norm(const std::vector<WeightedTree>& forest, const Exponents& e,
                                const NormOptions& opts = {});

} // namespace hardytree
