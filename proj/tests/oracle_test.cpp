#include <doctest.h>

#include <cmath>
#include <vector>

#include "hardytree/errors.hpp"
#include "hardytree/kernel.hpp"
#include "hardytree/norm.hpp"
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

Exponents exps(double p, double q) {
    const auto lift = [](double v) {
        return std::isinf(v) ? Exponent::infinity() : Exponent::from_double(v);
    };
    return Exponents(lift(p), lift(q));
}

constexpr double kInf = std::numeric_limits<double>::infinity();

} // namespace

TEST_SUITE("oracle") {

TEST_CASE("assemble_matrix on the three reference trees") {
    const KernelMatrix single = assemble_matrix(make({}, {2}, {3}));
    REQUIRE(single.n == 1);
    CHECK(single.at(0, 0) == 6.0);

    const KernelMatrix c2 = assemble_matrix(make({{0, 1}}, {1, 1}, {1, 1}));
    REQUIRE(c2.n == 2);
    CHECK(c2.at(0, 0) == 1.0);
    CHECK(c2.at(0, 1) == 0.0);
    CHECK(c2.at(1, 0) == 1.0);
    CHECK(c2.at(1, 1) == 1.0);

    const KernelMatrix st = assemble_matrix(make({{0, 1}, {0, 2}}, {1, 1, 1}, {1, 1, 1}));
    REQUIRE(st.n == 3);
    const double expected[3][3] = {{1, 0, 0}, {1, 1, 0}, {1, 0, 1}};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(st.at(i, j) == expected[i][j]);
}

TEST_CASE("assemble_matrix honors its size cap") {
    const WeightedTree wt = random_tree(1, 12);
    CHECK_THROWS_AS(assemble_matrix(wt, 0), SizeCapExceeded);
}

TEST_CASE("apply_operator prefix accumulation") {
    const WeightedTree c2 = make({{0, 1}}, {1, 1}, {1, 1});
    CHECK(apply_operator(c2, {1.0, 0.0}) == std::vector<double>{1.0, 1.0});
    CHECK(apply_operator(c2, {0.0, 0.0}) == std::vector<double>{0.0, 0.0});
    const WeightedTree c3 = make({{0, 1}, {1, 2}}, {1, 1, 1}, {1, 1, 1});
    CHECK(apply_operator(c3, {1.0, 1.0, 1.0}) == std::vector<double>{1.0, 2.0, 3.0});
}

TEST_CASE("apply_operator equals the dense matrix product") {
    for (std::uint64_t k = 0; k < 10; ++k) {
        const WeightedTree wt = random_tree(Rng::mix(11, k), 12);
        const KernelMatrix m = assemble_matrix(wt);
        Rng rng(Rng::mix(12, k));
        std::vector<double> f(wt.size());
        for (double& x : f) x = rng.next_double();
        const std::vector<double> fast = apply_operator(wt, f);
        for (std::size_t i = 0; i < m.n; ++i) {
            double dot = 0.0;
            for (std::size_t j = 0; j < m.n; ++j) dot += m.at(i, j) * f[m.order[j]];
            CHECK(fast[m.order[i]] == doctest::Approx(dot).epsilon(1e-12));
        }
    }
}

TEST_CASE("operator_norm closed-value examples") {
    const KernelMatrix single = assemble_matrix(make({}, {2}, {3}));
    for (auto [p, q] : std::vector<std::pair<double, double>>{{1, 1}, {2, 2}, {1.5, 3}, {kInf, 1}})
        CHECK(operator_norm(single, exps(p, q)).value == doctest::Approx(6.0));

    const KernelMatrix c2 = assemble_matrix(make({{0, 1}}, {1, 1}, {1, 1}));
    CHECK(operator_norm(c2, exps(2, 2)).value ==
          doctest::Approx(std::sqrt((3.0 + std::sqrt(5.0)) / 2.0)).epsilon(1e-9));
    CHECK(operator_norm(c2, exps(1, 2)).value == doctest::Approx(std::sqrt(2.0)));

    const KernelMatrix st = assemble_matrix(make({{0, 1}, {0, 2}}, {1, 1, 1}, {1, 1, 1}));
    CHECK(operator_norm(st, exps(2, 2)).value ==
          doctest::Approx(std::sqrt(2.0 + std::sqrt(3.0))).epsilon(1e-9));
}

TEST_CASE("method dispatch matches the exponent pattern") {
    const KernelMatrix m = assemble_matrix(random_tree(21, 8));
    CHECK(operator_norm(m, exps(1, 2)).method == NormMethod::closed_form_col);
    CHECK(operator_norm(m, exps(2, kInf)).method == NormMethod::closed_form_row);
    CHECK(operator_norm(m, exps(kInf, 2)).method == NormMethod::closed_form_row);
    CHECK(operator_norm(m, exps(2, 1)).method == NormMethod::closed_form_col);
    CHECK(operator_norm(m, exps(2, 2)).method == NormMethod::spectral);
    CHECK(operator_norm(m, exps(1.5, 3)).method == NormMethod::multistart_ascent);
}

TEST_CASE("witness invariants hold across the exponent grid") {
    const double axis[] = {1.0, 1.5, 2.0, 3.0, kInf};
    for (std::uint64_t k = 0; k < 6; ++k) {
        const WeightedTree wt = random_tree(Rng::mix(31, k), 10);
        const KernelMatrix m = assemble_matrix(wt);
        for (double p : axis)
            for (double q : axis) {
                const Exponents e = exps(p, q);
                const NormEstimate est = operator_norm(m, e);
                REQUIRE(est.witness.size() == m.n);
                double minw = 0.0;
                for (double x : est.witness) minw = std::min(minw, x);
                CHECK(minw >= 0.0);
                CHECK(power_sum_norm(est.witness.data(), est.witness.data() + m.n, e.p_val()) ==
                      doctest::Approx(1.0).epsilon(1e-12));
                std::vector<double> img(m.n, 0.0);
                for (std::size_t i = 0; i < m.n; ++i)
                    for (std::size_t j = 0; j < m.n; ++j) img[i] += m.at(i, j) * est.witness[j];
                CHECK(power_sum_norm(img.data(), img.data() + m.n, e.q_val()) ==
                      doctest::Approx(est.value).epsilon(1e-9));
            }
    }
}

TEST_CASE("norm dominates the image of random feasible points") {
    const WeightedTree wt = random_tree(41, 10);
    const KernelMatrix m = assemble_matrix(wt);
    const Exponents e = exps(1.5, 2.5);
    const double norm = operator_norm(m, e).value;
    Rng rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> f(m.n);
        for (double& x : f) x = rng.next_double();
        const double fp = power_sum_norm(f.data(), f.data() + m.n, e.p_val());
        std::vector<double> img(m.n, 0.0);
        for (std::size_t i = 0; i < m.n; ++i)
            for (std::size_t j = 0; j < m.n; ++j) img[i] += m.at(i, j) * f[j];
        const double iq = power_sum_norm(img.data(), img.data() + m.n, e.q_val());
        CHECK(iq <= norm * fp * (1.0 + 1e-9));
    }
}

TEST_CASE("spectral and forced multistart agree at p=q=2") {
    for (std::uint64_t k = 0; k < 20; ++k) {
        const KernelMatrix m = assemble_matrix(random_tree(Rng::mix(51, k), 12));
        const NormEstimate spec = operator_norm(m, exps(2, 2));
        NormOptions opts;
        opts.force = NormMethod::multistart_ascent;
        const NormEstimate asc = operator_norm(m, exps(2, 2), opts);
        CHECK(spec.method == NormMethod::spectral);
        CHECK(asc.method == NormMethod::multistart_ascent);
        CHECK(asc.value == doctest::Approx(spec.value).epsilon(1e-6));
    }
}

TEST_CASE("duality: the transpose has the conjugate norm") {
    for (std::uint64_t k = 0; k < 8; ++k) {
        const KernelMatrix m = assemble_matrix(random_tree(Rng::mix(61, k), 10));
        const KernelMatrix mt = transpose(m);
        for (auto [p, q] : std::vector<std::pair<double, double>>{
                 {1.5, 2.0}, {2.0, 3.0}, {1.0, 2.0}, {2.0, kInf}}) {
            const Exponents e = exps(p, q);
            const Exponents ed = exps(e.q_conj(), e.p_conj());
            const double a = operator_norm(m, e).value;
            const double b = operator_norm(mt, ed).value;
            CHECK(a == doctest::Approx(b).epsilon(1e-6));
        }
    }
}

TEST_CASE("norm is monotone in the weights") {
    const Exponents e = exps(1.5, 2.0);
    for (std::uint64_t k = 0; k < 6; ++k) {
        WeightedTree wt = random_tree(Rng::mix(71, k), 8);
        const double base = tree_operator_norm(wt, e).value;
        Rng rng(Rng::mix(72, k));
        const VertexId v = static_cast<VertexId>(rng.next_u64() % wt.size());
        WeightedTree up = wt;
        up.u[v] *= 1.5;
        CHECK(tree_operator_norm(up, e).value >= base - 1e-9);
        WeightedTree wp = wt;
        wp.w[v] *= 2.0;
        CHECK(tree_operator_norm(wp, e).value >= base - 1e-9);
    }
}

TEST_CASE("tree_operator_norm matches the dense path on the full grid") {
    const double axis[] = {1.0, 1.5, 2.0, 3.0, kInf};
    for (std::uint64_t k = 0; k < 6; ++k) {
        const WeightedTree wt = random_tree(Rng::mix(81, k), 12);
        const KernelMatrix m = assemble_matrix(wt);
        for (double p : axis)
            for (double q : axis) {
                const Exponents e = exps(p, q);
                const double dense = operator_norm(m, e).value;
                const NormEstimate tree = tree_operator_norm(wt, e);
                CHECK(tree.value == doctest::Approx(dense).epsilon(1e-7));
                REQUIRE(tree.witness.size() == wt.size());
            }
    }
}

TEST_CASE("forest norm combines components by regime") {
    const WeightedTree a = make({{0, 1}}, {1, 1}, {1, 1});
    const WeightedTree b = make({}, {2}, {3});
    const std::vector<WeightedTree> forest{a, b};

    // p <= q: max of the component norms.
    const ForestNorm fmax = forest_operator_norm(forest, exps(2, 2));
    CHECK(fmax.value == doctest::Approx(6.0));

    // p > q: l_r combination with 1/r = 1/q - 1/p.
    const Exponents e = exps(2, 1);
    const double na = tree_operator_norm(a, e).value;
    const double nb = tree_operator_norm(b, e).value;
    const double r = e.pq_over_p_minus_q();
    const ForestNorm fsum = forest_operator_norm(forest, e);
    CHECK(fsum.value ==
          doctest::Approx(std::pow(std::pow(na, r) + std::pow(nb, r), 1.0 / r)).epsilon(1e-9));
}

TEST_CASE("force flag validation") {
    const KernelMatrix m = assemble_matrix(random_tree(91, 6));
    NormOptions opts;
    opts.force = NormMethod::spectral;
    CHECK_THROWS_AS(operator_norm(m, exps(1.5, 2.0), opts), InvalidInput);
    opts.force = NormMethod::closed_form_col;
    CHECK_THROWS_AS(operator_norm(m, exps(2, 2), opts), InvalidInput);
}

TEST_CASE("from_dense rejects negative entries and zero operator is handled") {
    CHECK_THROWS_AS(KernelMatrix::from_dense(2, {1.0, 0.0, -0.5, 1.0}), InvalidInput);
    const KernelMatrix z = KernelMatrix::from_dense(2, {0.0, 0.0, 0.0, 0.0});
    const NormEstimate est = operator_norm(z, exps(1.5, 2.5));
    CHECK(est.value == 0.0);
    CHECK(power_sum_norm(est.witness.data(), est.witness.data() + 2, 1.5) ==
          doctest::Approx(1.0));
}

}
