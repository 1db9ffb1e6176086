#pragma once

#include <cstddef>
#include <vector>

#include "hardytree/tree.hpp"

namespace hardytree {

inline constexpr std::size_t kDefaultCutCap = std::size_t{1} << 18;

// A cut is a pair (D, Gamma) rooted at a base vertex xi*. D is a subtree
// grown from xi* by repeatedly expanding a vertex into all of its children or
// stopping; Gamma is a non-empty subset of the maximal vertices of D that
// must include every maximal vertex that is not a leaf of the ambient tree.
// D is redundant given Gamma and the closure rule, but storing both makes
// invariant checks O(|D|).
struct Cut {
    std::vector<VertexId> d_vertices;  // sorted ascending
    std::vector<VertexId> gamma;       // sorted ascending
    VertexId base = kNoVertex;

    friend bool operator==(const Cut& a, const Cut& b) {
        return a.base == b.base && a.d_vertices == b.d_vertices && a.gamma == b.gamma;
    }
};

// Maximal elements of a vertex set in the tree order: members with no child
// in the set. Input need not be sorted; output is sorted ascending.
std::vector<VertexId> v_max(const RootedTree& tree, const std::vector<VertexId>& vertices);

// Throws InvalidInput unless `cut` satisfies every structural invariant
// described on Cut.
void validate_cut(const RootedTree& tree, const Cut& cut);

// All cuts rooted at xi_star, in lexicographic order of (d_vertices, gamma).
// Throws SizeCapExceeded once more than `cap` cuts would be produced.
std::vector<Cut> enumerate_cuts(const RootedTree& tree, VertexId xi_star,
                                std::size_t cap = kDefaultCutCap);

} // namespace hardytree
