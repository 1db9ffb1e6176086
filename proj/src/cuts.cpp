#include "hardytree/cuts.hpp"

#include <algorithm>
#include <string>

#include "hardytree/errors.hpp"

namespace hardytree {

std::vector<VertexId> v_max(const RootedTree& tree, const std::vector<VertexId>& vertices) {
    std::vector<char> in(tree.size(), 0);
    for (VertexId v : vertices) {
        tree.check_vertex(v);
        in[v] = 1;
    }
    std::vector<VertexId> out;
    for (VertexId v = 0; v < tree.size(); ++v) {
        if (!in[v]) continue;
        bool has_member_child = false;
        for (VertexId c : tree.children(v))
            if (in[c]) {
                has_member_child = true;
                break;
            }
        if (!has_member_child) out.push_back(v);
    }
    return out;
}

void validate_cut(const RootedTree& tree, const Cut& cut) {
    tree.check_vertex(cut.base);
    if (cut.d_vertices.empty()) throw InvalidInput("cut has an empty vertex set D");
    std::vector<char> in_d(tree.size(), 0);
    VertexId prev = kNoVertex;
    for (VertexId v : cut.d_vertices) {
        tree.check_vertex(v);
        if (prev != kNoVertex && v <= prev)
            throw InvalidInput("cut vertex set D must be sorted strictly ascending");
        prev = v;
        in_d[v] = 1;
    }
    if (!in_d[cut.base]) throw InvalidInput("cut base vertex is not a member of D");
    for (VertexId v : cut.d_vertices) {
        if (v == cut.base) continue;
        if (v == tree.root() || !in_d[tree.parent(v)])
            throw InvalidInput("cut vertex set D is not closed from the base: vertex " +
                               std::to_string(v) + " lacks its parent");
    }
    for (VertexId v : cut.d_vertices) {
        bool any = false, all = true;
        for (VertexId c : tree.children(v)) {
            if (in_d[c])
                any = true;
            else
                all = false;
        }
        if (any && !all)
            throw InvalidInput("cut vertex " + std::to_string(v) +
                               " is expanded into some children but not all");
    }

    const std::vector<VertexId> maximal = v_max(tree, cut.d_vertices);
    std::vector<char> is_max(tree.size(), 0);
    for (VertexId v : maximal) is_max[v] = 1;

    if (cut.gamma.empty()) throw InvalidInput("cut boundary set Gamma must be non-empty");
    std::vector<char> in_gamma(tree.size(), 0);
    prev = kNoVertex;
    for (VertexId v : cut.gamma) {
        tree.check_vertex(v);
        if (prev != kNoVertex && v <= prev)
            throw InvalidInput("cut boundary set Gamma must be sorted strictly ascending");
        prev = v;
        if (!is_max[v])
            throw InvalidInput("cut boundary vertex " + std::to_string(v) +
                               " is not maximal in D");
        in_gamma[v] = 1;
    }
    for (VertexId v : maximal)
        if (!tree.is_leaf(v) && !in_gamma[v])
            throw InvalidInput("maximal cut vertex " + std::to_string(v) +
                               " is internal in the tree and must belong to Gamma");
}

std::vector<Cut> enumerate_cuts(const RootedTree& tree, VertexId xi_star, std::size_t cap) {
    tree.check_vertex(xi_star);
    std::vector<Cut> cuts;
    std::size_t candidates = 0;
    std::vector<VertexId> pending{xi_star};
    std::vector<VertexId> stopped;

    auto bump = [&]() {
        if (++candidates > cap)
            throw SizeCapExceeded("cut enumeration exceeded the cap of " + std::to_string(cap));
    };

    auto emit = [&]() {
        bump();
        std::vector<VertexId> m_a, m_i;
        for (VertexId v : stopped) (tree.is_leaf(v) ? m_a : m_i).push_back(v);
        if (m_a.size() >= 62)
            throw SizeCapExceeded("cut enumeration: " + std::to_string(m_a.size()) +
                                  " free boundary leaves in one D");
        Cut cut;
        cut.base = xi_star;
        cut.d_vertices = pending;
        std::sort(cut.d_vertices.begin(), cut.d_vertices.end());
        const std::size_t subsets = std::size_t{1} << m_a.size();
        for (std::size_t mask = 0; mask < subsets; ++mask) {
            cut.gamma = m_i;
            for (std::size_t b = 0; b < m_a.size(); ++b)
                if (mask & (std::size_t{1} << b)) cut.gamma.push_back(m_a[b]);
            if (cut.gamma.empty()) continue;
            bump();
            std::sort(cut.gamma.begin(), cut.gamma.end());
            cuts.push_back(cut);
        }
    };

    // Depth-first over per-vertex stop/expand decisions; `idx` points at the
    // next undecided member of D. Expansion appends all children, so a
    // completed pass has decided exactly the vertices of one closure-valid D.
    auto rec = [&](auto&& self, std::size_t idx) -> void {
        if (idx == pending.size()) {
            emit();
            return;
        }
        const VertexId v = pending[idx];
        stopped.push_back(v);
        self(self, idx + 1);
        stopped.pop_back();
        if (!tree.is_leaf(v)) {
            const auto& ch = tree.children(v);
            pending.insert(pending.end(), ch.begin(), ch.end());
            self(self, idx + 1);
            pending.resize(pending.size() - ch.size());
        }
    };
    rec(rec, 0);

    std::sort(cuts.begin(), cuts.end(), [](const Cut& a, const Cut& b) {
        if (a.d_vertices != b.d_vertices) return a.d_vertices < b.d_vertices;
        return a.gamma < b.gamma;
    });
    return cuts;
}

} // namespace hardytree
