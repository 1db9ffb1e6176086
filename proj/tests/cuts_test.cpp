#include <doctest.h>

#include <algorithm>
#include <vector>

#include "hardytree/cuts.hpp"
#include "hardytree/errors.hpp"
#include "hardytree/rng.hpp"
#include "hardytree/tree.hpp"

using namespace hardytree;

namespace {

RootedTree star() { return build_tree({{0, 1}, {0, 2}}, 0); }

// Independent filter: every subset of subtree(xi_star) is tested against the
// Cut invariants directly, with Gamma subsets enumerated over V_max.
std::vector<Cut> brute_force_cuts(const RootedTree& t, VertexId xi_star) {
    const std::vector<VertexId> sub = subtree(t, xi_star);
    const std::size_t m = sub.size();
    std::vector<Cut> out;
    for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
        std::vector<VertexId> d;
        for (std::size_t i = 0; i < m; ++i)
            if (mask & (std::size_t{1} << i)) d.push_back(sub[i]);
        const auto in_d = [&d](VertexId v) {
            return std::binary_search(d.begin(), d.end(), v);
        };
        if (!in_d(xi_star)) continue;
        // connectivity: everything except the base brings its parent
        bool ok = true;
        for (VertexId v : d)
            if (v != xi_star && !in_d(t.parent(v))) ok = false;
        if (!ok) continue;
        // closure: a non-maximal member keeps all of its children
        std::vector<VertexId> maximal;
        for (VertexId v : d) {
            bool has_child = false;
            for (VertexId c : t.children(v)) has_child = has_child || in_d(c);
            if (!has_child) {
                maximal.push_back(v);
            } else {
                for (VertexId c : t.children(v)) ok = ok && in_d(c);
            }
        }
        if (!ok) continue;
        std::vector<VertexId> required, optional;
        for (VertexId v : maximal)
            (t.is_leaf(v) ? optional : required).push_back(v);
        for (std::size_t g = 0; g < (std::size_t{1} << optional.size()); ++g) {
            Cut cut;
            cut.base = xi_star;
            cut.d_vertices = d;
            cut.gamma = required;
            for (std::size_t i = 0; i < optional.size(); ++i)
                if (g & (std::size_t{1} << i)) cut.gamma.push_back(optional[i]);
            if (cut.gamma.empty()) continue;
            std::sort(cut.gamma.begin(), cut.gamma.end());
            out.push_back(std::move(cut));
        }
    }
    std::sort(out.begin(), out.end(), [](const Cut& a, const Cut& b) {
        return a.d_vertices != b.d_vertices ? a.d_vertices < b.d_vertices : a.gamma < b.gamma;
    });
    return out;
}

WeightedTree random_tree(std::uint64_t seed, std::size_t max_n) {
    Rng rng(seed);
    const std::size_t n = 1 + rng.next_u64() % max_n;
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (std::size_t v = 1; v < n; ++v)
        edges.emplace_back(static_cast<VertexId>(rng.next_u64() % v), static_cast<VertexId>(v));
    return {build_tree(edges, 0), std::vector<double>(n, 1.0), std::vector<double>(n, 1.0)};
}

} // namespace

TEST_SUITE("cuts") {

TEST_CASE("single vertex has exactly one cut") {
    const RootedTree t = build_tree({}, 0);
    const auto cuts = enumerate_cuts(t, 0);
    REQUIRE(cuts.size() == 1);
    CHECK(cuts[0].d_vertices == std::vector<VertexId>{0});
    CHECK(cuts[0].gamma == std::vector<VertexId>{0});
}

TEST_CASE("chain of two has the two hand-enumerated cuts") {
    const RootedTree t = build_tree({{0, 1}}, 0);
    const auto cuts = enumerate_cuts(t, 0);
    REQUIRE(cuts.size() == 2);
    CHECK(cuts[0].d_vertices == std::vector<VertexId>{0});
    CHECK(cuts[0].gamma == std::vector<VertexId>{0});
    CHECK(cuts[1].d_vertices == std::vector<VertexId>{0, 1});
    CHECK(cuts[1].gamma == std::vector<VertexId>{1});
}

TEST_CASE("star has four cuts in lexicographic order") {
    const auto cuts = enumerate_cuts(star(), 0);
    REQUIRE(cuts.size() == 4);
    CHECK(cuts[0].d_vertices == std::vector<VertexId>{0});
    CHECK(cuts[0].gamma == std::vector<VertexId>{0});
    CHECK(cuts[1].d_vertices == std::vector<VertexId>{0, 1, 2});
    CHECK(cuts[1].gamma == std::vector<VertexId>{1});
    CHECK(cuts[2].gamma == std::vector<VertexId>{1, 2});
    CHECK(cuts[3].gamma == std::vector<VertexId>{2});
}

TEST_CASE("v_max picks members without children in the set") {
    const RootedTree t = build_tree({{0, 1}, {1, 2}, {0, 3}}, 0);
    CHECK(v_max(t, {0, 1, 2, 3}) == std::vector<VertexId>{2, 3});
    CHECK(v_max(t, {0}) == std::vector<VertexId>{0});
    CHECK(v_max(t, {1, 2}) == std::vector<VertexId>{2});
}

TEST_CASE("validate_cut accepts enumerated cuts and rejects corruptions") {
    const RootedTree t = star();
    for (const Cut& cut : enumerate_cuts(t, 0)) CHECK_NOTHROW(validate_cut(t, cut));

    Cut bad;
    bad.base = 0;
    bad.d_vertices = {0, 1};  // partial expansion: child 2 missing
    bad.gamma = {1};
    CHECK_THROWS_AS(validate_cut(t, bad), InvalidInput);

    bad.d_vertices = {0, 1, 2};
    bad.gamma = {};  // empty Gamma marks the degenerate family, not J'
    CHECK_THROWS_AS(validate_cut(t, bad), InvalidInput);

    bad.gamma = {0};  // 0 is not maximal in D
    CHECK_THROWS_AS(validate_cut(t, bad), InvalidInput);

    // Vertex 1 is maximal in D but internal in the tree, so Gamma = {3}
    // misses a required member.
    const RootedTree mixed = build_tree({{0, 1}, {1, 2}, {0, 3}}, 0);
    Cut internal_skip;
    internal_skip.base = 0;
    internal_skip.d_vertices = {0, 1, 3};
    internal_skip.gamma = {3};
    CHECK_THROWS_AS(validate_cut(mixed, internal_skip), InvalidInput);
    internal_skip.gamma = {1, 3};
    CHECK_NOTHROW(validate_cut(mixed, internal_skip));
}

TEST_CASE("enumeration matches the brute-force subset filter") {
    for (std::uint64_t k = 0; k < 12; ++k) {
        const WeightedTree wt = random_tree(Rng::mix(401, k), 9);
        for (VertexId base = 0; base < wt.size(); ++base) {
            const auto fast = enumerate_cuts(wt.tree, base);
            const auto slow = brute_force_cuts(wt.tree, base);
            REQUIRE(fast.size() == slow.size());
            for (std::size_t i = 0; i < fast.size(); ++i) CHECK(fast[i] == slow[i]);
        }
    }
}

TEST_CASE("every enumerated cut re-validates") {
    const WeightedTree wt = random_tree(77, 10);
    for (VertexId base = 0; base < wt.size(); ++base)
        for (const Cut& cut : enumerate_cuts(wt.tree, base))
            CHECK_NOTHROW(validate_cut(wt.tree, cut));
}

TEST_CASE("enumeration cap raises SizeCapExceeded") {
    CHECK_THROWS_AS(enumerate_cuts(star(), 0, 2), SizeCapExceeded);
}

}
