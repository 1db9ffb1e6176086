#pragma once

#include <cstddef>
#include <vector>

#include "hardytree/tree.hpp"

namespace hardytree {

inline constexpr std::size_t kDefaultMatrixCap = 4096;

// Dense kernel of the summation operator: entry[xi, xi'] = w(xi)u(xi') when
// xi' is an ancestor-or-self of xi, else 0. Rows and columns are indexed by
// topological rank (vertices sorted by depth, then id), so the matrix is
// lower triangular and results reproduce bit-identically.
struct KernelMatrix {
    std::size_t n = 0;
    std::vector<double> entries;        // row-major n*n
    std::vector<VertexId> order;        // rank -> vertex id
    std::vector<std::uint32_t> rank;    // vertex id -> rank

    double at(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
    double& at(std::size_t i, std::size_t j) { return entries[i * n + j]; }

    // Arbitrary non-negative square matrix with identity vertex order; used
    // for transposes and synthetic instances.
    static KernelMatrix from_dense(std::size_t n, std::vector<double> entries);
};

// Throws SizeCapExceeded when the tree has more than `cap` vertices.
KernelMatrix assemble_matrix(const WeightedTree& wt, std::size_t cap = kDefaultMatrixCap);

KernelMatrix transpose(const KernelMatrix& m);

// (Sf)(xi) = w(xi) * sum_{xi' <= xi} u(xi')f(xi'), evaluated in O(n) by
// accumulating the u-weighted prefix sums from the root downward. Input and
// output are indexed by vertex id.
std::vector<double> apply_operator(const WeightedTree& wt, const std::vector<double>& f);

} // namespace hardytree
