#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hardytree/exponents.hpp"
#include "hardytree/tree.hpp"

namespace hardytree {

inline constexpr std::size_t kDefaultGenerateCap = std::size_t{1} << 20;

// Strictly increasing absolute depths j_0 < j_1 < ... with j_0 = depth(base).
// Band k collects the vertices of subtree(base) at depths [j_k, j_{k+1}),
// the last band extending to the bottom of the tree.
struct LevelGrouping {
    VertexId base = 0;
    std::vector<int> cut_levels;
};

// Partition of the children of xi into non-empty disjoint blocks.
struct SplitSpec {
    VertexId xi = 0;
    std::vector<std::vector<VertexId>> partition;
};

// Branching factors b_0..b_{N-1} of a regular tree of depth N; psi(j) is the
// base-2 log of the number of depth-j descendants of any fixed vertex, so
// descendant counts are exactly 2^{psi(j')-psi(j)}.
struct PsiProfile {
    std::vector<int> branching;

    explicit PsiProfile(std::vector<int> b);
    int depth() const { return static_cast<int>(branching.size()); }
    double psi(int j) const;
};

// Per-depth weights u_j, w_j for levels 0..N.
struct LevelWeights {
    std::vector<double> u_levels;
    std::vector<double> w_levels;
};

struct LevelReduction {
    WeightedTree tree;
    // source[new id] = smallest original vertex id of the merged component
    // (its band-minimal vertex); new ids are dense, ordered by this value.
    std::vector<VertexId> source;
};

// The grouped tree A_J: one vertex per connected component of each level
// band, u aggregated in l_{p'} and w in l_q over the component. The operator
// norm never decreases under this transformation.
LevelReduction reduce_levels(const WeightedTree& wt, const LevelGrouping& g, const Exponents& e);

struct SplitResult {
    std::vector<WeightedTree> forest;
    // vertex_map[component][new id] = original vertex id; every copy of the
    // split vertex maps back to it.
    std::vector<std::vector<VertexId>> vertex_map;
};

// Replaces xi by one copy per partition block, each copy adopting its
// block's subtrees, with u(copy) = n^{1/p} u(xi) and w(copy) = n^{-1/q} w(xi)
// for n blocks. Splitting the root yields a forest with one tree per block.
// The operator norm never decreases.
SplitResult split_vertex(const WeightedTree& wt, const SplitSpec& s, const Exponents& e);

// The tree in which every depth-j vertex has exactly branching[j] children,
// ids assigned breadth-first level by level.
RootedTree generate_regular_tree(const PsiProfile& profile, std::size_t cap = kDefaultGenerateCap);

// Weights per level: u_hat_j = u_j 2^{-psi(j)/p}, w_hat_j = w_j 2^{psi(j)/q}.
// For p >= q on a regular tree the 1D problem with these weights has exactly
// the tree problem's norm.
std::pair<std::vector<double>, std::vector<double>> hat_weights(const LevelWeights& lw,
                                                                const PsiProfile& profile,
                                                                const Exponents& e);

struct ChainWeights {
    std::vector<double> u_tilde;
    std::vector<double> w_tilde;
    std::uint64_t m_star = 1;  // 2^{psi(N)} identical disjoint chains
};

// Weights of the m* identical chains produced by repeatedly splitting a
// regular tree: u_tilde_i = u_i 2^{(psi(N)-psi(i))/p}, w_tilde_i =
// w_i 2^{-(psi(N)-psi(i))/q}.
ChainWeights chain_weights(const LevelWeights& lw, const PsiProfile& profile, const Exponents& e);

// Assigns the level weights to every vertex of the (regular) tree by depth.
WeightedTree with_level_weights(const RootedTree& tree, const LevelWeights& lw);

} // namespace hardytree
