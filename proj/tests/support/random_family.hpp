#pragma once

// Seeded instance families shared by the calibration tool and the acceptance
// tests. Calibration freezes regression brackets measured on exactly these
// families, so any change here invalidates the frozen constants.

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "hardytree/exponents.hpp"
#include "hardytree/hardy1d.hpp"
#include "hardytree/kernel.hpp"
#include "hardytree/norm.hpp"
#include "hardytree/reductions.hpp"
#include "hardytree/rng.hpp"
#include "hardytree/tree.hpp"

namespace hardytree::family {

// Log-uniform in [2^-4, 2^4].
inline double random_weight(Rng& rng) { return std::exp2(-4.0 + 8.0 * rng.next_double()); }

// Uniform random recursive tree: vertex v attaches to a uniform predecessor.
// Sizes are uniform in [1, max_vertices].
inline WeightedTree random_tree(std::uint64_t seed, std::size_t max_vertices) {
    Rng rng(seed);
    const std::size_t n = 1 + static_cast<std::size_t>(rng.next_u64() % max_vertices);
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (std::size_t v = 1; v < n; ++v)
        edges.emplace_back(static_cast<VertexId>(rng.next_u64() % v), static_cast<VertexId>(v));
    std::vector<double> u(n), w(n);
    for (std::size_t v = 0; v < n; ++v) u[v] = random_weight(rng);
    for (std::size_t v = 0; v < n; ++v) w[v] = random_weight(rng);
    return {build_tree(edges, 0), std::move(u), std::move(w)};
}

// 1D weight pair of the given length, same log-uniform law.
inline Sequences random_sequences(std::uint64_t seed, std::size_t length) {
    Rng rng(seed);
    Sequences s;
    s.u.resize(length);
    s.w.resize(length);
    for (double& x : s.u) x = random_weight(rng);
    for (double& x : s.w) x = random_weight(rng);
    return s;
}

// Full binary tree of the given depth with u constant one and w(xi) =
// 4^{-depth(xi)}, the geometric-decay family of the two-sided sup-product
// comparison.
inline WeightedTree binary_decay_tree(int depth) {
    PsiProfile profile(std::vector<int>(static_cast<std::size_t>(depth), 2));
    RootedTree tree = generate_regular_tree(profile);
    LevelWeights lw;
    lw.u_levels.assign(static_cast<std::size_t>(depth) + 1, 1.0);
    lw.w_levels.resize(static_cast<std::size_t>(depth) + 1);
    for (int j = 0; j <= depth; ++j) lw.w_levels[static_cast<std::size_t>(j)] = std::pow(4.0, -j);
    return with_level_weights(tree, lw);
}

// The (p, q) grid of the random-tree criteria: {1, 1.5, 2, 3, inf}^2.
inline std::vector<Exponents> exponent_grid() {
    const double vals[] = {1.0, 1.5, 2.0, 3.0};
    std::vector<Exponent> axis;
    for (double v : vals) axis.push_back(Exponent::from_double(v));
    axis.push_back(Exponent::infinity());
    std::vector<Exponents> grid;
    for (const Exponent& p : axis)
        for (const Exponent& q : axis) grid.emplace_back(p, q);
    return grid;
}

inline constexpr std::uint64_t kTreeFamilySeed = 2001;      // criteria 2 and 4
inline constexpr std::uint64_t kBetaFamilySeed = 3001;      // criterion 3
inline constexpr std::uint64_t kReductionFamilySeed = 5001; // criterion 5
inline constexpr std::uint64_t kSequenceFamilySeed = 6001;  // criterion 6
inline constexpr std::uint64_t kMatrixFamilySeed = 8001;    // criterion 8

// Options shared by the geometric-decay ratio study: fewer random starts keep
// the depth-10 instances fast, and the deterministic start candidates already
// pin the ratio's lower end.
inline NormOptions decay_norm_options() {
    NormOptions o;
    o.starts = 4;
    return o;
}

// Random non-negative square matrix with about one vanishing entry in five;
// sizes are uniform in [1, max_dim].
inline KernelMatrix random_matrix(std::uint64_t seed, std::size_t max_dim) {
    Rng rng(seed);
    const std::size_t n = 1 + static_cast<std::size_t>(rng.next_u64() % max_dim);
    std::vector<double> entries(n * n, 0.0);
    for (double& x : entries)
        if (rng.next_double() >= 0.2) x = random_weight(rng);
    return KernelMatrix::from_dense(n, std::move(entries));
}

} // namespace hardytree::family
