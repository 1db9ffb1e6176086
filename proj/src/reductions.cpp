#include "hardytree/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "hardytree/errors.hpp"

namespace hardytree {

PsiProfile::PsiProfile(std::vector<int> b) : branching(std::move(b)) {
    for (int v : branching)
        if (v < 1) throw InvalidInput("branching factors must be at least 1");
}

double PsiProfile::psi(int j) const {
    if (j < 0 || j > depth()) throw InvalidInput("psi level " + std::to_string(j) + " out of range");
    double acc = 0.0;
    for (int i = 0; i < j; ++i) acc += std::log2(static_cast<double>(branching[i]));
    return acc;
}

LevelReduction reduce_levels(const WeightedTree& wt, const LevelGrouping& g, const Exponents& e) {
    const RootedTree& t = wt.tree;
    t.check_vertex(g.base);
    const auto& J = g.cut_levels;
    if (J.empty()) throw InvalidInput("grouping needs at least one cut level");
    if (J.front() != static_cast<int>(t.depth(g.base)))
        throw InvalidInput("first cut level must equal the base vertex depth");
    for (std::size_t k = 1; k < J.size(); ++k)
        if (J[k] <= J[k - 1]) throw InvalidInput("cut levels must be strictly increasing");

    const auto sub = subtree(t, g.base);
    std::vector<char> level_hit(J.size(), 0);
    std::vector<char> in_sub(t.size(), 0);
    for (VertexId v : sub) {
        in_sub[v] = 1;
        const int d = static_cast<int>(t.depth(v));
        const auto it = std::upper_bound(J.begin(), J.end(), d);
        if (d == *(it - 1)) level_hit[(it - 1) - J.begin()] = 1;
    }
    for (std::size_t k = 0; k < J.size(); ++k)
        if (!level_hit[k])
            throw InvalidInput("empty band: no vertex at cut level " + std::to_string(J[k]));

    // comp[v] = the ancestor of v sitting at its band's cut level; those
    // ancestors become the vertices of the grouped tree.
    std::vector<VertexId> comp(t.size(), kNoVertex);
    std::vector<VertexId> roots;
    for (VertexId v : t.topological_order()) {
        if (!in_sub[v]) continue;
        const int d = static_cast<int>(t.depth(v));
        const auto it = std::upper_bound(J.begin(), J.end(), d);
        if (d == *(it - 1)) {
            comp[v] = v;
            roots.push_back(v);
        } else {
            comp[v] = comp[t.parent(v)];
        }
    }
    std::sort(roots.begin(), roots.end());
    std::vector<VertexId> new_id(t.size(), kNoVertex);
    for (std::size_t i = 0; i < roots.size(); ++i) new_id[roots[i]] = static_cast<VertexId>(i);

    std::vector<std::vector<VertexId>> members(roots.size());
    for (VertexId v : sub) members[new_id[comp[v]]].push_back(v);

    std::vector<std::pair<VertexId, VertexId>> edges;
    for (VertexId r : roots)
        if (r != g.base) edges.emplace_back(new_id[comp[t.parent(r)]], new_id[r]);

    const double pc = e.p_conj();
    const double qv = e.q_val();
    std::vector<double> u_j(roots.size()), w_j(roots.size());
    for (std::size_t i = 0; i < roots.size(); ++i) {
        u_j[i] = weighted_norm(wt.u, members[i], pc);
        w_j[i] = weighted_norm(wt.w, members[i], qv);
    }

    LevelReduction out{WeightedTree(build_tree(edges, new_id[g.base]), std::move(u_j), std::move(w_j)),
                       std::move(roots)};
    return out;
}

SplitResult split_vertex(const WeightedTree& wt, const SplitSpec& s, const Exponents& e) {
    const RootedTree& t = wt.tree;
    t.check_vertex(s.xi);
    const auto& children = t.children(s.xi);
    if (children.empty()) throw InvalidInput("split vertex has no children");
    if (s.partition.empty()) throw InvalidInput("partition has no blocks");

    std::vector<VertexId> block_of(t.size(), kNoVertex);
    std::size_t covered = 0;
    for (std::size_t b = 0; b < s.partition.size(); ++b) {
        if (s.partition[b].empty()) throw InvalidInput("partition block " + std::to_string(b) + " is empty");
        for (VertexId c : s.partition[b]) {
            if (std::find(children.begin(), children.end(), c) == children.end())
                throw InvalidInput("partition member " + std::to_string(c) +
                                   " is not a child of the split vertex");
            if (block_of[c] != kNoVertex)
                throw InvalidInput("partition blocks overlap at vertex " + std::to_string(c));
            block_of[c] = static_cast<VertexId>(b);
            ++covered;
        }
    }
    if (covered != children.size())
        throw InvalidInput("partition does not cover all children of the split vertex");

    const std::size_t n_blocks = s.partition.size();
    const std::size_t n_orig = t.size();
    const double pe = e.p().is_infinite() ? 0.0 : 1.0 / e.p_val();
    const double qe = e.q().is_infinite() ? 0.0 : 1.0 / e.q_val();
    const double u_copy = std::pow(static_cast<double>(n_blocks), pe) * wt.u[s.xi];
    const double w_copy = std::pow(static_cast<double>(n_blocks), -qe) * wt.w[s.xi];

    // Provisional labels: originals keep their id, copy j of the split
    // vertex is n_orig + j. Components are then compressed to dense ids in
    // label order.
    auto copy_label = [&](std::size_t j) { return static_cast<VertexId>(n_orig + j); };
    auto parent_label = [&](VertexId v) -> VertexId {
        const VertexId p = t.parent(v);
        return p == s.xi ? copy_label(block_of[v]) : p;
    };

    std::vector<std::vector<VertexId>> comp_labels;
    std::vector<VertexId> comp_root_labels;
    if (s.xi == t.root()) {
        for (std::size_t b = 0; b < n_blocks; ++b) {
            std::vector<VertexId> labels{copy_label(b)};
            for (VertexId c : s.partition[b]) {
                const auto sub = subtree(t, c);
                labels.insert(labels.end(), sub.begin(), sub.end());
            }
            std::sort(labels.begin(), labels.end());
            comp_labels.push_back(std::move(labels));
            comp_root_labels.push_back(copy_label(b));
        }
    } else {
        std::vector<VertexId> labels;
        for (VertexId v = 0; v < n_orig; ++v)
            if (v != s.xi) labels.push_back(v);
        for (std::size_t b = 0; b < n_blocks; ++b) labels.push_back(copy_label(b));
        comp_labels.push_back(std::move(labels));
        comp_root_labels.push_back(t.root());
    }

    SplitResult out;
    for (std::size_t ci = 0; ci < comp_labels.size(); ++ci) {
        const auto& labels = comp_labels[ci];
        std::map<VertexId, VertexId> to_new;
        std::vector<VertexId> to_orig(labels.size());
        for (std::size_t i = 0; i < labels.size(); ++i) {
            to_new[labels[i]] = static_cast<VertexId>(i);
            to_orig[i] = labels[i] < n_orig ? labels[i] : s.xi;
        }
        std::vector<std::pair<VertexId, VertexId>> edges;
        std::vector<double> u(labels.size()), w(labels.size());
        for (std::size_t i = 0; i < labels.size(); ++i) {
            const VertexId lab = labels[i];
            if (lab < n_orig) {
                u[i] = wt.u[lab];
                w[i] = wt.w[lab];
                if (lab != t.root()) edges.emplace_back(to_new.at(parent_label(lab)), i);
            } else {
                u[i] = u_copy;
                w[i] = w_copy;
                if (s.xi != t.root()) edges.emplace_back(to_new.at(t.parent(s.xi)), i);
            }
        }
        out.forest.emplace_back(build_tree(edges, to_new.at(comp_root_labels[ci])),
                                std::move(u), std::move(w));
        out.vertex_map.push_back(std::move(to_orig));
    }
    return out;
}

RootedTree generate_regular_tree(const PsiProfile& profile, std::size_t cap) {
    std::size_t total = 1, level = 1;
    for (int b : profile.branching) {
        level *= static_cast<std::size_t>(b);
        total += level;
        if (total > cap)
            throw SizeCapExceeded("regular tree would exceed the vertex cap of " +
                                  std::to_string(cap));
    }
    std::vector<std::pair<VertexId, VertexId>> edges;
    edges.reserve(total - 1);
    VertexId next = 1;
    std::vector<VertexId> frontier{0};
    for (int b : profile.branching) {
        std::vector<VertexId> next_frontier;
        next_frontier.reserve(frontier.size() * static_cast<std::size_t>(b));
        for (VertexId v : frontier)
            for (int i = 0; i < b; ++i) {
                edges.emplace_back(v, next);
                next_frontier.push_back(next++);
            }
        frontier = std::move(next_frontier);
    }
    return build_tree(edges, 0);
}

namespace {

void check_level_weights(const LevelWeights& lw, std::size_t levels) {
    if (lw.u_levels.size() != levels || lw.w_levels.size() != levels)
        throw InvalidInput("level weights must cover depths 0.." + std::to_string(levels - 1));
    for (double v : lw.u_levels)
        if (!(v > 0.0)) throw InvalidInput("level weights must be positive");
    for (double v : lw.w_levels)
        if (!(v > 0.0)) throw InvalidInput("level weights must be positive");
}

} // namespace

std::pair<std::vector<double>, std::vector<double>> hat_weights(const LevelWeights& lw,
                                                                const PsiProfile& profile,
                                                                const Exponents& e) {
    const std::size_t levels = static_cast<std::size_t>(profile.depth()) + 1;
    check_level_weights(lw, levels);
    const double pe = e.p().is_infinite() ? 0.0 : 1.0 / e.p_val();
    const double qe = e.q().is_infinite() ? 0.0 : 1.0 / e.q_val();
    std::vector<double> u_hat(levels), w_hat(levels);
    for (std::size_t j = 0; j < levels; ++j) {
        const double psi = profile.psi(static_cast<int>(j));
        u_hat[j] = lw.u_levels[j] * std::exp2(-psi * pe);
        w_hat[j] = lw.w_levels[j] * std::exp2(psi * qe);
    }
    return {std::move(u_hat), std::move(w_hat)};
}

ChainWeights chain_weights(const LevelWeights& lw, const PsiProfile& profile, const Exponents& e) {
    const std::size_t levels = static_cast<std::size_t>(profile.depth()) + 1;
    check_level_weights(lw, levels);
    const double pe = e.p().is_infinite() ? 0.0 : 1.0 / e.p_val();
    const double qe = e.q().is_infinite() ? 0.0 : 1.0 / e.q_val();
    const double psi_n = profile.psi(profile.depth());
    ChainWeights cw;
    cw.u_tilde.resize(levels);
    cw.w_tilde.resize(levels);
    for (std::size_t j = 0; j < levels; ++j) {
        const double gap = psi_n - profile.psi(static_cast<int>(j));
        cw.u_tilde[j] = lw.u_levels[j] * std::exp2(gap * pe);
        cw.w_tilde[j] = lw.w_levels[j] * std::exp2(-gap * qe);
    }
    cw.m_star = 1;
    for (int b : profile.branching) {
        if (cw.m_star > (std::uint64_t{1} << 62) / static_cast<std::uint64_t>(b))
            throw SizeCapExceeded("chain multiplicity overflows");
        cw.m_star *= static_cast<std::uint64_t>(b);
    }
    return cw;
}

WeightedTree with_level_weights(const RootedTree& tree, const LevelWeights& lw) {
    check_level_weights(lw, static_cast<std::size_t>(tree.height()) + 1);
    std::vector<double> u(tree.size()), w(tree.size());
    for (VertexId v = 0; v < tree.size(); ++v) {
        u[v] = lw.u_levels[tree.depth(v)];
        w[v] = lw.w_levels[tree.depth(v)];
    }
    return WeightedTree(RootedTree(tree), u, w);
}

} // namespace hardytree
