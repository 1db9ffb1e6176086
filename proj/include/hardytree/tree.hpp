#pragma once

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "hardytree/exponents.hpp"

namespace hardytree {

// Vertices are dense indices 0..n-1.
using VertexId = std::uint32_t;
inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

// Immutable rooted tree. Children lists are kept sorted by id so every
// traversal and enumeration in the library is deterministic.
class RootedTree {
public:
    std::size_t size() const { return parent_.size(); }
    VertexId root() const { return root_; }
    VertexId parent(VertexId v) const { return parent_[v]; }
    const std::vector<VertexId>& children(VertexId v) const { return children_[v]; }
    std::uint32_t depth(VertexId v) const { return depth_[v]; }
    std::uint32_t height() const { return height_; }
    bool is_leaf(VertexId v) const { return children_[v].empty(); }

    // Vertices sorted by (depth, id): every vertex appears after its ancestors.
    const std::vector<VertexId>& topological_order() const { return topo_; }

    // True when `anc` lies on the root path of `v` (or equals it).
    bool is_ancestor(VertexId anc, VertexId v) const;

    void check_vertex(VertexId v) const;

    friend RootedTree build_tree(const std::vector<std::pair<VertexId, VertexId>>& edges,
                                 VertexId root);

private:
    VertexId root_ = 0;
    std::uint32_t height_ = 0;
    std::vector<VertexId> parent_;
    std::vector<std::vector<VertexId>> children_;
    std::vector<std::uint32_t> depth_;
    std::vector<VertexId> topo_;
};

// Builds the tree on {0..n-1} from (parent, child) edges; n is inferred as
// (number of edges) + 1. Throws InvalidInput for duplicate parents, cycles,
// vertices unreachable from the root, or ids outside 0..n-1.
RootedTree build_tree(const std::vector<std::pair<VertexId, VertexId>>& edges, VertexId root);

// Descendants of xi at distance exactly j (depth level set), sorted by id.
// level_set(t, xi, 0) = {xi}; empty past the subtree's depth.
std::vector<VertexId> level_set(const RootedTree& t, VertexId xi, std::uint32_t j);

// All descendants-or-self of xi, sorted by id.
std::vector<VertexId> subtree(const RootedTree& t, VertexId xi);

// The unique path xi_star = v_0 < v_1 < ... < v_k = xi, top-down. Throws if
// xi_star is not an ancestor-or-equal of xi.
std::vector<VertexId> path_segment(const RootedTree& t, VertexId xi_star, VertexId xi);

// (sum_{v in support} |f(v)|^r)^{1/r} with the extended conventions of
// power_sum_norm (max for r = inf, 0 for empty support, error for r < 1).
double weighted_norm(const std::vector<double>& f, const std::vector<VertexId>& support, double r);

// Tree plus positive vertex weights u (source side) and w (target side).
struct WeightedTree {
    RootedTree tree;
    std::vector<double> u;
    std::vector<double> w;

    WeightedTree() = default;
    WeightedTree(RootedTree t, std::vector<double> u_, std::vector<double> w_);

    std::size_t size() const { return tree.size(); }
};

} // namespace hardytree
