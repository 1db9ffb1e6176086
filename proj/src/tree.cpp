#include "hardytree/tree.hpp"
#include "hardytree/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hardytree {

bool RootedTree::is_ancestor(VertexId anc, VertexId v) const {
    check_vertex(anc);
    check_vertex(v);
    while (depth_[v] > depth_[anc]) v = parent_[v];
    return v == anc;
}

void RootedTree::check_vertex(VertexId v) const {
    if (v >= parent_.size())
        throw InvalidInput("unknown vertex id " + std::to_string(v));
}

RootedTree build_tree(const std::vector<std::pair<VertexId, VertexId>>& edges, VertexId root) {
    const std::size_t n = edges.size() + 1;
    RootedTree t;
    t.root_ = root;
    t.parent_.assign(n, kNoVertex);
    t.children_.assign(n, {});
    t.depth_.assign(n, 0);

    if (root >= n) throw InvalidInput("root id " + std::to_string(root) + " out of range");
    for (const auto& [p, c] : edges) {
        if (p >= n || c >= n)
            throw InvalidInput("edge (" + std::to_string(p) + "," + std::to_string(c) +
                               ") references a vertex outside 0.." + std::to_string(n - 1));
        if (c == root) throw InvalidInput("cycle detected: root has an incoming edge");
        if (t.parent_[c] != kNoVertex)
            throw InvalidInput("duplicate parent for vertex " + std::to_string(c));
        t.parent_[c] = p;
    }

    // BFS from the root assigns depths and detects unreachable vertices; any
    // cycle among the edges leaves its vertices unreached.
    for (std::size_t v = 0; v < n; ++v)
        if (t.parent_[v] != kNoVertex) t.children_[t.parent_[v]].push_back(static_cast<VertexId>(v));
    for (auto& ch : t.children_) std::sort(ch.begin(), ch.end());

    std::vector<char> seen(n, 0);
    std::vector<VertexId> queue{root};
    seen[root] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const VertexId v = queue[head];
        for (const VertexId c : t.children_[v]) {
            if (seen[c]) throw InvalidInput("cycle detected at vertex " + std::to_string(c));
            seen[c] = 1;
            t.depth_[c] = t.depth_[v] + 1;
            t.height_ = std::max(t.height_, t.depth_[c]);
            queue.push_back(c);
        }
    }
    for (std::size_t v = 0; v < n; ++v)
        if (!seen[v])
            throw InvalidInput("disconnected vertex " + std::to_string(v) +
                               (t.parent_[v] == kNoVertex ? " (no parent and not the root)"
                                                          : " (cycle or unreachable)"));

    t.topo_.resize(n);
    for (std::size_t v = 0; v < n; ++v) t.topo_[v] = static_cast<VertexId>(v);
    std::sort(t.topo_.begin(), t.topo_.end(), [&](VertexId a, VertexId b) {
        return t.depth_[a] != t.depth_[b] ? t.depth_[a] < t.depth_[b] : a < b;
    });
    return t;
}

std::vector<VertexId> level_set(const RootedTree& t, VertexId xi, std::uint32_t j) {
    t.check_vertex(xi);
    std::vector<VertexId> frontier{xi};
    for (std::uint32_t step = 0; step < j && !frontier.empty(); ++step) {
        std::vector<VertexId> next;
        for (const VertexId v : frontier)
            next.insert(next.end(), t.children(v).begin(), t.children(v).end());
        frontier = std::move(next);
    }
    std::sort(frontier.begin(), frontier.end());
    return frontier;
}

std::vector<VertexId> subtree(const RootedTree& t, VertexId xi) {
    t.check_vertex(xi);
    std::vector<VertexId> out{xi};
    for (std::size_t head = 0; head < out.size(); ++head)
        out.insert(out.end(), t.children(out[head]).begin(), t.children(out[head]).end());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<VertexId> path_segment(const RootedTree& t, VertexId xi_star, VertexId xi) {
    t.check_vertex(xi_star);
    t.check_vertex(xi);
    std::vector<VertexId> rev;
    VertexId v = xi;
    while (t.depth(v) > t.depth(xi_star)) {
        rev.push_back(v);
        v = t.parent(v);
    }
    if (v != xi_star)
        throw InvalidInput("vertices " + std::to_string(xi_star) + " and " + std::to_string(xi) +
                           " are incomparable in the tree order");
    rev.push_back(xi_star);
    std::reverse(rev.begin(), rev.end());
    return rev;
}

double weighted_norm(const std::vector<double>& f, const std::vector<VertexId>& support, double r) {
    if (r < 1.0) throw InvalidInput("norm exponent must be >= 1");
    if (support.empty()) return 0.0;
    if (std::isinf(r)) {
        double m = 0.0;
        for (const VertexId v : support) m = std::max(m, std::abs(f.at(v)));
        return m;
    }
    double s = 0.0;
    for (const VertexId v : support) s += std::pow(std::abs(f.at(v)), r);
    return std::pow(s, 1.0 / r);
}

WeightedTree::WeightedTree(RootedTree t, std::vector<double> u_, std::vector<double> w_)
    : tree(std::move(t)), u(std::move(u_)), w(std::move(w_)) {
    if (u.size() != tree.size() || w.size() != tree.size())
        throw InvalidInput("weight vectors must have one entry per vertex");
    for (std::size_t v = 0; v < u.size(); ++v) {
        if (!(u[v] > 0.0) || !std::isfinite(u[v]) || !(w[v] > 0.0) || !std::isfinite(w[v]))
            throw InvalidInput("non-positive weight at vertex " + std::to_string(v));
    }
}

} // namespace hardytree
