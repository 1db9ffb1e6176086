#include "hardytree/kernel.hpp"

#include <string>

#include "hardytree/errors.hpp"

namespace hardytree {

KernelMatrix KernelMatrix::from_dense(std::size_t n, std::vector<double> entries) {
    if (entries.size() != n * n)
        throw InvalidInput("dense matrix needs n*n entries, got " + std::to_string(entries.size()));
    for (double v : entries)
        if (!(v >= 0.0))
            throw InvalidInput("dense matrix entries must be non-negative and finite");
    KernelMatrix m;
    m.n = n;
    m.entries = std::move(entries);
    m.order.resize(n);
    m.rank.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        m.order[i] = static_cast<VertexId>(i);
        m.rank[i] = static_cast<std::uint32_t>(i);
    }
    return m;
}

KernelMatrix assemble_matrix(const WeightedTree& wt, std::size_t cap) {
    const std::size_t n = wt.size();
    if (n > cap)
        throw SizeCapExceeded("tree has " + std::to_string(n) +
                              " vertices, exceeding the dense matrix cap of " + std::to_string(cap));
    KernelMatrix m;
    m.n = n;
    m.entries.assign(n * n, 0.0);
    m.order = wt.tree.topological_order();
    m.rank.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        m.rank[m.order[i]] = static_cast<std::uint32_t>(i);
    for (std::size_t i = 0; i < n; ++i) {
        const VertexId xi = m.order[i];
        const double wxi = wt.w[xi];
        for (VertexId a = xi;; a = wt.tree.parent(a)) {
            m.at(i, m.rank[a]) = wxi * wt.u[a];
            if (a == wt.tree.root()) break;
        }
    }
    return m;
}

KernelMatrix transpose(const KernelMatrix& m) {
    KernelMatrix t;
    t.n = m.n;
    t.entries.assign(m.n * m.n, 0.0);
    t.order = m.order;
    t.rank = m.rank;
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = 0; j < m.n; ++j)
            t.at(j, i) = m.at(i, j);
    return t;
}

std::vector<double> apply_operator(const WeightedTree& wt, const std::vector<double>& f) {
    const std::size_t n = wt.size();
    if (f.size() != n)
        throw InvalidInput("input vector has " + std::to_string(f.size()) +
                           " entries for a tree with " + std::to_string(n) + " vertices");
    std::vector<double> prefix(n, 0.0);
    std::vector<double> out(n, 0.0);
    for (VertexId v : wt.tree.topological_order()) {
        double acc = wt.u[v] * f[v];
        if (v != wt.tree.root()) acc += prefix[wt.tree.parent(v)];
        prefix[v] = acc;
        out[v] = wt.w[v] * acc;
    }
    return out;
}

} // namespace hardytree
