#include <doctest.h>

#include <cmath>
#include <vector>

#include "hardytree/bounds.hpp"
#include "hardytree/errors.hpp"
#include "hardytree/norm.hpp"
#include "hardytree/reductions.hpp"
#include "hardytree/rng.hpp"
#include "hardytree/tree.hpp"

using namespace hardytree;

namespace {

WeightedTree make(std::vector<std::pair<VertexId, VertexId>> edges, std::vector<double> u,
                  std::vector<double> w) {
    return {build_tree(edges, 0), std::move(u), std::move(w)};
}

WeightedTree random_tree(std::uint64_t seed, std::size_t max_n) {
    Rng rng(seed);
    const std::size_t n = 1 + rng.next_u64() % max_n;
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (std::size_t v = 1; v < n; ++v)
        edges.emplace_back(static_cast<VertexId>(rng.next_u64() % v), static_cast<VertexId>(v));
    std::vector<double> u(n), w(n);
    for (double& x : u) x = std::exp2(-4.0 + 8.0 * rng.next_double());
    for (double& x : w) x = std::exp2(-4.0 + 8.0 * rng.next_double());
    return {build_tree(edges, 0), std::move(u), std::move(w)};
}

// Binary depth-N tree with u constant 1 and w = 4^{-depth}.
WeightedTree binary_decay(int depth) {
    PsiProfile profile(std::vector<int>(static_cast<std::size_t>(depth), 2));
    LevelWeights lw;
    lw.u_levels.assign(static_cast<std::size_t>(depth) + 1, 1.0);
    lw.w_levels.resize(static_cast<std::size_t>(depth) + 1);
    for (int j = 0; j <= depth; ++j) lw.w_levels[static_cast<std::size_t>(j)] = std::pow(4.0, -j);
    return with_level_weights(generate_regular_tree(profile), lw);
}

Exponents e22() { return Exponents(Exponent::from_double(2), Exponent::from_double(2)); }

const Exponent kTwo = Exponent::from_double(2.0);

} // namespace

TEST_SUITE("bounds") {

TEST_CASE("residual_weight_norm over the Gamma subtrees") {
    const WeightedTree c2 = make({{0, 1}}, {1, 1}, {1, 1});
    Cut root_cut;
    root_cut.base = 0;
    root_cut.d_vertices = {0};
    root_cut.gamma = {0};
    CHECK(residual_weight_norm(c2, kTwo, root_cut) == doctest::Approx(std::sqrt(2.0)));

    Cut leaf_cut;
    leaf_cut.base = 0;
    leaf_cut.d_vertices = {0, 1};
    leaf_cut.gamma = {1};
    CHECK(residual_weight_norm(c2, kTwo, leaf_cut) == doctest::Approx(1.0));

    const WeightedTree st = make({{0, 1}, {0, 2}}, {1, 1, 1}, {1, 1, 1});
    Cut both;
    both.base = 0;
    both.d_vertices = {0, 1, 2};
    both.gamma = {1, 2};
    CHECK(residual_weight_norm(st, kTwo, both) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("sup_product reference values") {
    CHECK(sup_product(make({}, {2}, {3}), kTwo).value == doctest::Approx(6.0));
    const VertexBound chain = sup_product(make({{0, 1}}, {1, 1}, {1, 1}), kTwo);
    CHECK(chain.value == doctest::Approx(std::sqrt(2.0)));
    CHECK(chain.witness == 0);
    // Binary decay tree: geometric series sums to 8/7 at the root.
    const VertexBound deep = sup_product(binary_decay(12), kTwo);
    CHECK(deep.value == doctest::Approx(std::sqrt(8.0 / 7.0)).epsilon(1e-9));
    CHECK(deep.witness == 0);
}

TEST_CASE("path_lower_bound reference values") {
    CHECK(path_lower_bound(make({}, {2}, {3}), e22(), 0).value == doctest::Approx(6.0));
    CHECK(path_lower_bound(make({{0, 1}}, {1, 1}, {1, 1}), e22(), 0).value ==
          doctest::Approx(std::sqrt(2.0)));
    const VertexBound mid =
        path_lower_bound(make({{0, 1}, {1, 2}}, {1, 1, 1}, {1, 1, 1}), e22(), 0);
    CHECK(mid.value == doctest::Approx(2.0));
    CHECK(mid.witness == 1);
}

TEST_CASE("path_lower_bound restricted to a non-root base") {
    const WeightedTree c3 = make({{0, 1}, {1, 2}}, {1, 1, 1}, {1, 1, 1});
    // Starting at vertex 1 the best is the two-vertex path {1,2}.
    CHECK(path_lower_bound(c3, e22(), 1).value == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("cut_supremum reference values and witnesses") {
    const CutBound single = cut_supremum(make({}, {2}, {3}), e22(), 0);
    CHECK(single.value == doctest::Approx(6.0));

    const CutBound chain = cut_supremum(make({{0, 1}}, {1, 1}, {1, 1}), e22(), 0);
    CHECK(chain.value == doctest::Approx(std::sqrt(2.0)));

    const CutBound star = cut_supremum(make({{0, 1}, {0, 2}}, {1, 1, 1}, {1, 1, 1}), e22(), 0);
    CHECK(star.value == doctest::Approx(std::sqrt(3.0)));
    CHECK(star.witness.d_vertices == std::vector<VertexId>{0});
    CHECK(star.witness.gamma == std::vector<VertexId>{0});
}

TEST_CASE("cut_supremum refuses p > q") {
    const WeightedTree wt = make({{0, 1}}, {1, 1}, {1, 1});
    CHECK_THROWS_AS(
        cut_supremum(wt, Exponents(Exponent::from_double(3), Exponent::from_double(2)), 0),
        InvalidInput);
}

TEST_CASE("cut_supremum dominates sup_product") {
    for (std::uint64_t k = 0; k < 15; ++k) {
        const WeightedTree wt = random_tree(Rng::mix(201, k), 10);
        for (auto [p, q] : std::vector<std::pair<double, double>>{{1.5, 2.0}, {2.0, 2.0},
                                                                  {1.0, 3.0}}) {
            const Exponents e(Exponent::from_double(p), Exponent::from_double(q));
            const double cs = cut_supremum(wt, e, wt.tree.root()).value;
            const double sp = sup_product(wt, e.q()).value;
            CHECK(cs >= sp - 1e-6);
        }
    }
}

TEST_CASE("certificate bounds sit below the oracle norm") {
    for (std::uint64_t k = 0; k < 15; ++k) {
        const WeightedTree wt = random_tree(Rng::mix(211, k), 10);
        for (auto [p, q] : std::vector<std::pair<double, double>>{{1.5, 2.0}, {2.0, 2.0},
                                                                  {3.0, 3.0}}) {
            const Exponents e(Exponent::from_double(p), Exponent::from_double(q));
            const double norm = tree_operator_norm(wt, e).value;
            CHECK(norm >= sup_product(wt, e.q()).value - 1e-6);
            CHECK(norm >= path_lower_bound(wt, e, wt.tree.root()).value - 1e-6);
        }
    }
}

TEST_CASE("homogeneity in u and w") {
    const WeightedTree wt = random_tree(221, 8);
    const Exponents e = e22();
    const double cs = cut_supremum(wt, e, 0).value;
    const double sp = sup_product(wt, e.q()).value;
    const double pl = path_lower_bound(wt, e, 0).value;

    WeightedTree su = wt;
    for (double& x : su.u) x *= 3.0;
    CHECK(cut_supremum(su, e, 0).value == doctest::Approx(3.0 * cs).epsilon(1e-12));
    CHECK(sup_product(su, e.q()).value == doctest::Approx(3.0 * sp).epsilon(1e-12));
    CHECK(path_lower_bound(su, e, 0).value == doctest::Approx(3.0 * pl).epsilon(1e-12));

    WeightedTree sw = wt;
    for (double& x : sw.w) x *= 5.0;
    CHECK(cut_supremum(sw, e, 0).value == doctest::Approx(5.0 * cs).epsilon(1e-12));
    CHECK(sup_product(sw, e.q()).value == doctest::Approx(5.0 * sp).epsilon(1e-12));
    CHECK(path_lower_bound(sw, e, 0).value == doctest::Approx(5.0 * pl).epsilon(1e-12));
}

TEST_CASE("hypothesis checker on the geometric binary family") {
    const WeightedTree wt = binary_decay(6);
    const Hypothesis1Report rep = check_theorem1_hypotheses(wt, kTwo, 1);
    CHECK(rep.K == doctest::Approx(2.0));
    // lambda = (1/4) ((1-t^N)/(1-t^{N+1}))^{1/q} with t = 2*4^{-q}: the exact
    // finite-depth value of the geometric subtree-norm ratio.
    const double t = 2.0 * std::pow(4.0, -2.0);
    const double expected =
        0.25 * std::sqrt((1.0 - std::pow(t, 6)) / (1.0 - std::pow(t, 7)));
    CHECK(rep.lambda == doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::abs(rep.lambda - 0.25) < 1e-5);
    CHECK(rep.l0 == 1);
    CHECK(rep.satisfied);
}

TEST_CASE("hypothesis checker on a flat chain") {
    const std::size_t n = 6;  // depth N = 5
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (std::size_t v = 1; v < n; ++v)
        edges.emplace_back(static_cast<VertexId>(v - 1), static_cast<VertexId>(v));
    const WeightedTree wt = make(edges, std::vector<double>(n, 1.0),
                                 std::vector<double>(n, 1.0));
    const Hypothesis1Report rep =
        check_theorem1_hypotheses(wt, Exponent::from_double(1.0), 1);
    CHECK(rep.K == doctest::Approx(1.0));
    CHECK(rep.lambda == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
    CHECK(rep.satisfied);
}

TEST_CASE("hypothesis checker picks up the edge weight ratio") {
    const WeightedTree st = make({{0, 1}, {0, 2}}, {1.0, 5.0, 5.0}, {1, 1, 1});
    const Hypothesis1Report rep = check_theorem1_hypotheses(st, kTwo, 1);
    CHECK(rep.K == doctest::Approx(5.0));
}

}
