#include "hardytree/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "hardytree/beta.hpp"
#include "hardytree/errors.hpp"

namespace hardytree {

namespace {

// Power sums (the maximum when r is infinite) of w over every subtree, in
// one bottom-up pass.
std::vector<double> subtree_weight_stat(const WeightedTree& wt, double r) {
    const auto& topo = wt.tree.topological_order();
    std::vector<double> s(wt.size(), 0.0);
    for (auto v = topo.rbegin(); v != topo.rend(); ++v) {
        double acc = std::isinf(r) ? wt.w[*v] : std::pow(wt.w[*v], r);
        for (VertexId c : wt.tree.children(*v))
            acc = std::isinf(r) ? std::max(acc, s[c]) : acc + s[c];
        s[*v] = acc;
    }
    return s;
}

double stat_to_norm(double stat, double r) { return std::isinf(r) ? stat : std::pow(stat, 1.0 / r); }

} // namespace

double residual_weight_norm(const WeightedTree& wt, const Exponent& q, const Cut& cut) {
    validate_cut(wt.tree, cut);
    const double qv = q.value();
    const auto stat = subtree_weight_stat(wt, qv);
    // Gamma is an antichain, so the subtrees below its members are disjoint.
    double acc = 0.0;
    for (VertexId g : cut.gamma)
        acc = std::isinf(qv) ? std::max(acc, stat[g]) : acc + stat[g];
    return stat_to_norm(acc, qv);
}

VertexBound sup_product(const WeightedTree& wt, const Exponent& q) {
    const double qv = q.value();
    const auto stat = subtree_weight_stat(wt, qv);
    VertexBound best;
    for (VertexId v = 0; v < wt.size(); ++v) {
        const double val = wt.u[v] * stat_to_norm(stat[v], qv);
        if (best.witness == kNoVertex || val > best.value) {
            best.value = val;
            best.witness = v;
        }
    }
    return best;
}

VertexBound path_lower_bound(const WeightedTree& wt, const Exponents& e, VertexId xi_star) {
    wt.tree.check_vertex(xi_star);
    const double qv = e.q_val();
    const double pc = e.p_conj();
    const auto wstat = subtree_weight_stat(wt, qv);

    // Path statistic of u^{p'} from xi_star down its subtree, accumulated in
    // topological order (parents precede children).
    std::vector<double> pstat(wt.size(), -1.0);
    VertexBound best;
    for (VertexId v : wt.tree.topological_order()) {
        double own;
        if (v == xi_star)
            own = std::isinf(pc) ? wt.u[v] : std::pow(wt.u[v], pc);
        else if (v != wt.tree.root() && pstat[wt.tree.parent(v)] >= 0.0) {
            const double up = pstat[wt.tree.parent(v)];
            own = std::isinf(pc) ? std::max(wt.u[v], up) : std::pow(wt.u[v], pc) + up;
        } else {
            continue;  // outside subtree(xi_star)
        }
        pstat[v] = own;
        const double val = stat_to_norm(own, pc) * stat_to_norm(wstat[v], qv);
        if (best.witness == kNoVertex || val > best.value) {
            best.value = val;
            best.witness = v;
        }
    }
    return best;
}

CutBound cut_supremum(const WeightedTree& wt, const Exponents& e, VertexId xi_star,
                      std::size_t cap) {
    if (e.regime() == Regime::p_gt_q)
        throw InvalidInput("cut_supremum requires p <= q");
    CutBound best;
    bool first = true;
    for (const Cut& cut : enumerate_cuts(wt.tree, xi_star, cap)) {
        const double beta = beta_recursive(wt, e.p(), cut);
        const double ratio = residual_weight_norm(wt, e.q(), cut) / beta;
        // Enumeration is lexicographic, so strict improvement keeps the
        // smallest witnessing cut.
        if (first || ratio > best.value) {
            best.value = ratio;
            best.witness = cut;
            first = false;
        }
    }
    return best;
}

Hypothesis1Report check_theorem1_hypotheses(const WeightedTree& wt, const Exponent& q, int l0) {
    if (l0 < 1) throw InvalidInput("l0 must be at least 1");
    Hypothesis1Report rep;
    rep.l0 = l0;
    rep.K = 1.0;
    for (VertexId v = 0; v < wt.size(); ++v) {
        rep.K = std::max(rep.K, static_cast<double>(wt.tree.children(v).size()));
        if (v != wt.tree.root()) rep.K = std::max(rep.K, wt.u[v] / wt.u[wt.tree.parent(v)]);
    }
    const auto stat = subtree_weight_stat(wt, q.value());
    // Every vertex deep enough has exactly one ancestor l0 levels up, so the
    // pairs (xi, xi'') are swept by one upward walk per vertex.
    rep.lambda = 0.0;
    for (VertexId v = 0; v < wt.size(); ++v) {
        if (wt.tree.depth(v) < static_cast<std::uint32_t>(l0)) continue;
        VertexId a = v;
        for (int i = 0; i < l0; ++i) a = wt.tree.parent(a);
        const double ratio =
            stat_to_norm(stat[v], q.value()) / stat_to_norm(stat[a], q.value());
        rep.lambda = std::max(rep.lambda, ratio);
    }
    rep.satisfied = rep.lambda < 1.0;
    return rep;
}

} // namespace hardytree
