#include "hardytree/norm.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <functional>
#include <map>
#include <memory>
#include <string>

#include "hardytree/errors.hpp"
#include "hardytree/rng.hpp"

namespace hardytree {

const char* name(NormMethod m) {
    switch (m) {
        case NormMethod::closed_form_col: return "closed_form_col";
        case NormMethod::closed_form_row: return "closed_form_row";
        case NormMethod::spectral: return "spectral";
        case NormMethod::multistart_ascent: return "multistart_ascent";
    }
    return "unknown";
}

namespace {

// Abstracts the dense kernel and the matrix-free tree operator behind one
// interface so the dispatch and the iterative solvers are written once.
// Vectors are indexed by matrix rank for the dense case and by vertex id for
// the tree case.
struct LinearOp {
    std::size_t n = 0;
    std::function<void(const double*, double*)> apply;       // out = A x
    std::function<void(const double*, double*)> apply_t;     // out = A^T y
    std::function<double(std::size_t, double)> column_norm;  // ||A e_j||_r
    std::function<double(std::size_t, double)> row_norm;     // l_r norm of row i
    std::function<void(std::size_t, double*)> row_copy;      // out = row i
};

double vec_norm(const std::vector<double>& x, double r) {
    return power_sum_norm(x.data(), x.data() + x.size(), r);
}

void normalize(std::vector<double>& x, double r) {
    const double nrm = vec_norm(x, r);
    if (!(nrm > 0.0)) throw ConvergenceFailure("cannot normalize a zero vector");
    for (double& v : x) v /= nrm;
}

double evaluate(const LinearOp& op, const std::vector<double>& f, double q,
                std::vector<double>& g) {
    g.assign(op.n, 0.0);
    op.apply(f.data(), g.data());
    return vec_norm(g, q);
}

void check_options(const NormOptions& o) {
    if (!(o.tol > 0.0)) throw InvalidInput("tol must be positive");
    if (o.starts < 0) throw InvalidInput("starts must be non-negative");
    if (o.max_iterations < 1) throw InvalidInput("max_iterations must be at least 1");
}

bool is_zero_operator(const LinearOp& op, std::vector<double>& g) {
    std::vector<double> ones(op.n, 1.0);
    g.assign(op.n, 0.0);
    op.apply(ones.data(), g.data());
    for (double v : g)
        if (v > 0.0) return false;
    return true;
}

NormEstimate zero_estimate(const LinearOp& op, double p, const NormOptions& opts) {
    NormEstimate est;
    est.value = 0.0;
    est.witness.assign(op.n, 1.0);
    normalize(est.witness, p);
    est.method = NormMethod::closed_form_col;
    est.converged = true;
    est.seed = opts.seed;
    return est;
}

// --- closed forms ----------------------------------------------------------

// p = 1: the unit ball's extreme points are the coordinate vectors, so the
// norm is the largest column l_q norm.
NormEstimate solve_p1(const LinearOp& op, const Exponents& e, const NormOptions& opts) {
    NormEstimate est;
    est.method = NormMethod::closed_form_col;
    est.seed = opts.seed;
    const double q = e.q_val();
    std::size_t jbest = 0;
    double best = -1.0;
    for (std::size_t j = 0; j < op.n; ++j) {
        const double cn = op.column_norm(j, q);
        if (cn > best) {
            best = cn;
            jbest = j;
        }
    }
    est.witness.assign(op.n, 0.0);
    est.witness[jbest] = 1.0;
    std::vector<double> g;
    est.value = evaluate(op, est.witness, q, g);
    return est;
}

// q = inf: the norm is the largest row l_{p'} norm; the witness for finite
// p > 1 is the Hoelder-tight profile row^{p'-1}, and for p = inf the all-ones
// vector realizes the maximal row sum.
NormEstimate solve_qinf(const LinearOp& op, const Exponents& e, const NormOptions& opts) {
    NormEstimate est;
    est.method = NormMethod::closed_form_row;
    est.seed = opts.seed;
    const double p = e.p_val();
    const double pc = e.p_conj();
    std::size_t ibest = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < op.n; ++i) {
        const double rn = op.row_norm(i, pc);
        if (rn > best) {
            best = rn;
            ibest = i;
        }
    }
    if (e.p().is_infinite()) {
        est.witness.assign(op.n, 1.0);
    } else {
        std::vector<double> row(op.n, 0.0);
        op.row_copy(ibest, row.data());
        est.witness.assign(op.n, 0.0);
        for (std::size_t j = 0; j < op.n; ++j) est.witness[j] = std::pow(row[j], pc - 1.0);
        normalize(est.witness, p);
    }
    std::vector<double> g;
    est.value = evaluate(op, est.witness, e.q_val(), g);
    return est;
}

// p = inf (q finite): the maximum over the unit ball of a non-negative
// operator is attained at the all-ones vector.
NormEstimate solve_pinf(const LinearOp& op, const Exponents& e, const NormOptions& opts) {
    NormEstimate est;
    est.method = NormMethod::closed_form_row;
    est.seed = opts.seed;
    est.witness.assign(op.n, 1.0);
    std::vector<double> g;
    est.value = evaluate(op, est.witness, e.q_val(), g);
    return est;
}

// q = 1 (1 < p < inf): ||Af||_1 = <c, f> with c the column-sum vector, so the
// norm is ||c||_{p'} with witness proportional to c^{p'-1}.
NormEstimate solve_q1(const LinearOp& op, const Exponents& e, const NormOptions& opts) {
    NormEstimate est;
    est.method = NormMethod::closed_form_col;
    est.seed = opts.seed;
    const double p = e.p_val();
    const double pc = e.p_conj();
    std::vector<double> c(op.n, 0.0);
    for (std::size_t j = 0; j < op.n; ++j) c[j] = op.column_norm(j, 1.0);
    est.witness.assign(op.n, 0.0);
    for (std::size_t j = 0; j < op.n; ++j) est.witness[j] = std::pow(c[j], pc - 1.0);
    normalize(est.witness, p);
    std::vector<double> g;
    est.value = evaluate(op, est.witness, 1.0, g);
    return est;
}

// p = q = 2: power iteration on A^T A. The Rayleigh quotient is monotone
// non-decreasing along the iteration, so a stalled value means convergence.
NormEstimate solve_spectral(const LinearOp& op, const NormOptions& opts) {
    NormEstimate est;
    est.method = NormMethod::spectral;
    est.seed = opts.seed;
    const std::size_t n = op.n;
    std::vector<double> x(n, 1.0), y(n, 0.0), z(n, 0.0);
    normalize(x, 2.0);
    double prev = -1.0;
    int stall = 0;
    est.converged = false;
    for (int it = 0; it < opts.max_iterations; ++it) {
        y.assign(n, 0.0);
        op.apply(x.data(), y.data());
        const double v = vec_norm(y, 2.0);
        z.assign(n, 0.0);
        op.apply_t(y.data(), z.data());
        const double zn = vec_norm(z, 2.0);
        if (!(zn > 0.0)) {
            est.converged = true;
            break;
        }
        for (std::size_t j = 0; j < n; ++j) x[j] = z[j] / zn;
        if (std::abs(v - prev) <= opts.tol * std::max(1.0, v)) {
            if (++stall >= 2) {
                est.converged = true;
                break;
            }
        } else {
            stall = 0;
        }
        prev = v;
    }
    est.witness = x;
    std::vector<double> g;
    est.value = evaluate(op, est.witness, 2.0, g);
    return est;
}

// --- alternating maximization ----------------------------------------------

// One sweep of f -> argmax_y <Af, y> over the dual unit ball followed by
// f -> argmax_f <f, A^T y> over the primal unit ball. Endpoint exponents are
// handled as the limiting argmax selections.
void ascent_step(const LinearOp& op, double p, double q, const std::vector<double>& g,
                 std::vector<double>& f, std::vector<double>& y, std::vector<double>& z) {
    const std::size_t n = op.n;
    y.assign(n, 0.0);
    if (std::isinf(q)) {
        std::size_t imax = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (g[i] > g[imax]) imax = i;
        y[imax] = 1.0;
    } else {
        const double gq = vec_norm(g, q);
        if (!(gq > 0.0)) throw ConvergenceFailure("operator image vanished during ascent");
        for (std::size_t i = 0; i < n; ++i) y[i] = std::pow(g[i] / gq, q - 1.0);
    }
    z.assign(n, 0.0);
    op.apply_t(y.data(), z.data());
    if (p == 1.0) {
        std::size_t jmax = 0;
        for (std::size_t j = 1; j < n; ++j)
            if (z[j] > z[jmax]) jmax = j;
        f.assign(n, 0.0);
        f[jmax] = 1.0;
    } else if (std::isinf(p)) {
        f.assign(n, 1.0);
    } else {
        const double zmax = *std::max_element(z.begin(), z.end());
        if (!(zmax > 0.0)) throw ConvergenceFailure("transposed image vanished during ascent");
        for (std::size_t j = 0; j < n; ++j) f[j] = std::pow(z[j] / zmax, 1.0 / (p - 1.0));
        normalize(f, p);
    }
}

void run_ascent(const LinearOp& op, double p, double q, const NormOptions& opts,
                std::vector<double> f, double& best, std::vector<double>& best_f,
                bool& all_converged) {
    std::vector<double> g, y, z;
    normalize(f, p);
    double v = evaluate(op, f, q, g);
    if (v > best) {
        best = v;
        best_f = f;
    }
    double prev = v;
    bool converged = false;
    for (int it = 0; it < opts.max_iterations; ++it) {
        ascent_step(op, p, q, g, f, y, z);
        v = evaluate(op, f, q, g);
        if (v > best) {
            best = v;
            best_f = f;
        }
        if (std::abs(v - prev) <= opts.tol * std::max(1.0, v)) {
            converged = true;
            break;
        }
        prev = v;
    }
    all_converged = all_converged && converged;
}

NormEstimate solve_ascent(const LinearOp& op, const Exponents& e, const NormOptions& opts) {
    NormEstimate est;
    est.method = NormMethod::multistart_ascent;
    est.seed = opts.seed;
    est.starts = opts.starts;
    const std::size_t n = op.n;
    const double p = e.p_val();
    const double q = e.q_val();
    const double pc = e.p_conj();

    double best = 0.0;
    std::vector<double> best_f;
    std::vector<double> g;

    // Deterministic candidates evaluated exactly: coordinate vectors attain
    // every column norm, and for moderate sizes the Hoelder profile of each
    // row attains that row's contribution. These floors make the estimate
    // independent of the random starts.
    std::size_t jbest = 0;
    double cbest = -1.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double cn = op.column_norm(j, q);
        if (cn > cbest) {
            cbest = cn;
            jbest = j;
        }
    }
    std::vector<double> f(n, 0.0);
    f[jbest] = 1.0;
    double v = evaluate(op, f, q, g);
    if (v > best) {
        best = v;
        best_f = f;
    }

    std::vector<double> uniform(n, 1.0);
    normalize(uniform, p);
    v = evaluate(op, uniform, q, g);
    if (v > best) {
        best = v;
        best_f = uniform;
    }

    if (n <= 128 && p > 1.0 && !std::isinf(p)) {
        std::vector<double> row(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            op.row_copy(i, row.data());
            bool nonzero = false;
            for (std::size_t j = 0; j < n; ++j) {
                f[j] = std::pow(row[j], pc - 1.0);
                nonzero = nonzero || f[j] > 0.0;
            }
            if (!nonzero) continue;
            normalize(f, p);
            v = evaluate(op, f, q, g);
            if (v > best) {
                best = v;
                best_f = f;
            }
        }
    }

    bool all_converged = true;
    run_ascent(op, p, q, opts, uniform, best, best_f, all_converged);
    if (!best_f.empty() && best_f != uniform)
        run_ascent(op, p, q, opts, best_f, best, best_f, all_converged);
    for (int k = 0; k < opts.starts; ++k) {
        Rng rng(Rng::mix(opts.seed, static_cast<std::uint64_t>(k) + 1));
        for (std::size_t j = 0; j < n; ++j) f[j] = rng.next_positive();
        run_ascent(op, p, q, opts, f, best, best_f, all_converged);
    }

    est.converged = all_converged;
    est.witness = std::move(best_f);
    est.value = evaluate(op, est.witness, q, g);
    return est;
}

NormEstimate dispatch(const LinearOp& op, const Exponents& e, const NormOptions& opts) {
    check_options(opts);
    if (op.n == 0) throw InvalidInput("operator has no coordinates");
    std::vector<double> g;
    if (is_zero_operator(op, g)) return zero_estimate(op, e.p_val(), opts);

    const bool p1 = e.p_val() == 1.0;
    const bool pinf = e.p().is_infinite();
    const bool q1 = e.q_val() == 1.0;
    const bool qinf = e.q().is_infinite();
    const bool two_two = !pinf && !qinf && e.p_val() == 2.0 && e.q_val() == 2.0;

    if (opts.force) {
        switch (*opts.force) {
            case NormMethod::spectral:
                if (!two_two) throw InvalidInput("spectral method requires p = q = 2");
                return solve_spectral(op, opts);
            case NormMethod::multistart_ascent:
                return solve_ascent(op, e, opts);
            default:
                throw InvalidInput("only spectral and multistart_ascent can be forced");
        }
    }
    if (p1) return solve_p1(op, e, opts);
    if (qinf) return solve_qinf(op, e, opts);
    if (pinf) return solve_pinf(op, e, opts);
    if (q1) return solve_q1(op, e, opts);
    if (two_two) return solve_spectral(op, opts);
    return solve_ascent(op, e, opts);
}

// --- operator views ---------------------------------------------------------

LinearOp dense_op(const KernelMatrix& m) {
    LinearOp op;
    op.n = m.n;
    const KernelMatrix* a = &m;
    op.apply = [a](const double* x, double* out) {
        const std::size_t n = a->n;
        for (std::size_t i = 0; i < n; ++i) {
            const double* row = a->entries.data() + i * n;
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += row[j] * x[j];
            out[i] = s;
        }
    };
    op.apply_t = [a](const double* y, double* out) {
        const std::size_t n = a->n;
        std::fill(out, out + n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double yi = y[i];
            if (yi == 0.0) continue;
            const double* row = a->entries.data() + i * n;
            for (std::size_t j = 0; j < n; ++j) out[j] += row[j] * yi;
        }
    };
    op.column_norm = [a](std::size_t j, double r) {
        const std::size_t n = a->n;
        std::vector<double> col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = a->entries[i * n + j];
        return power_sum_norm(col.data(), col.data() + n, r);
    };
    op.row_norm = [a](std::size_t i, double r) {
        const double* row = a->entries.data() + i * a->n;
        return power_sum_norm(row, row + a->n, r);
    };
    op.row_copy = [a](std::size_t i, double* out) {
        std::memcpy(out, a->entries.data() + i * a->n, a->n * sizeof(double));
    };
    return op;
}

struct TreeOpData {
    const WeightedTree* wt = nullptr;
    // Keyed by the exponent r: power sums of w over each subtree and of u
    // along each root path (the max when r is infinite). Filled lazily since
    // most calls touch only one or two exponents.
    std::map<double, std::vector<double>> subtree_stat;
    std::map<double, std::vector<double>> path_stat;

    const std::vector<double>& subtree(double r) {
        auto it = subtree_stat.find(r);
        if (it != subtree_stat.end()) return it->second;
        const auto& t = wt->tree;
        const auto& topo = t.topological_order();
        std::vector<double> s(t.size(), 0.0);
        for (auto v = topo.rbegin(); v != topo.rend(); ++v) {
            double acc = std::isinf(r) ? wt->w[*v] : std::pow(wt->w[*v], r);
            for (VertexId c : t.children(*v))
                acc = std::isinf(r) ? std::max(acc, s[c]) : acc + s[c];
            s[*v] = acc;
        }
        return subtree_stat.emplace(r, std::move(s)).first->second;
    }

    const std::vector<double>& path(double r) {
        auto it = path_stat.find(r);
        if (it != path_stat.end()) return it->second;
        const auto& t = wt->tree;
        std::vector<double> s(t.size(), 0.0);
        for (VertexId v : t.topological_order()) {
            const double own = std::isinf(r) ? wt->u[v] : std::pow(wt->u[v], r);
            if (v == t.root())
                s[v] = own;
            else
                s[v] = std::isinf(r) ? std::max(own, s[t.parent(v)]) : own + s[t.parent(v)];
        }
        return path_stat.emplace(r, std::move(s)).first->second;
    }
};

LinearOp tree_op(const WeightedTree& wt) {
    auto d = std::make_shared<TreeOpData>();
    d->wt = &wt;
    LinearOp op;
    op.n = wt.size();
    op.apply = [d](const double* x, double* out) {
        const auto& t = d->wt->tree;
        std::vector<double> prefix(t.size(), 0.0);
        for (VertexId v : t.topological_order()) {
            double acc = d->wt->u[v] * x[v];
            if (v != t.root()) acc += prefix[t.parent(v)];
            prefix[v] = acc;
            out[v] = d->wt->w[v] * acc;
        }
    };
    op.apply_t = [d](const double* y, double* out) {
        const auto& t = d->wt->tree;
        const auto& topo = t.topological_order();
        std::vector<double> s(t.size(), 0.0);
        for (auto v = topo.rbegin(); v != topo.rend(); ++v) {
            double acc = d->wt->w[*v] * y[*v];
            for (VertexId c : t.children(*v)) acc += s[c];
            s[*v] = acc;
            out[*v] = d->wt->u[*v] * acc;
        }
    };
    op.column_norm = [d](std::size_t j, double r) {
        const auto& s = d->subtree(r);
        const double stat = s[j];
        return d->wt->u[j] * (std::isinf(r) ? stat : std::pow(stat, 1.0 / r));
    };
    op.row_norm = [d](std::size_t i, double r) {
        const auto& s = d->path(r);
        const double stat = s[i];
        return d->wt->w[i] * (std::isinf(r) ? stat : std::pow(stat, 1.0 / r));
    };
    op.row_copy = [d](std::size_t i, double* out) {
        const auto& t = d->wt->tree;
        std::fill(out, out + t.size(), 0.0);
        const double wi = d->wt->w[i];
        for (VertexId a = static_cast<VertexId>(i);; a = t.parent(a)) {
            out[a] = wi * d->wt->u[a];
            if (a == t.root()) break;
        }
    };
    return op;
}

} // namespace

NormEstimate operator_norm(const KernelMatrix& m, const Exponents& e, const NormOptions& opts) {
    return dispatch(dense_op(m), e, opts);
}

NormEstimate tree_operator_norm(const WeightedTree& wt, const Exponents& e,
                                const NormOptions& opts) {
    return dispatch(tree_op(wt), e, opts);
}

ForestNorm forest_operator_norm(const std::vector<WeightedTree>& forest, const Exponents& e,
                                const NormOptions& opts) {
    if (forest.empty()) throw InvalidInput("forest has no components");
    ForestNorm fn;
    fn.components.reserve(forest.size());
    for (const WeightedTree& wt : forest) {
        fn.components.push_back(tree_operator_norm(wt, e, opts));
        fn.converged = fn.converged && fn.components.back().converged;
    }
    if (e.regime() == Regime::p_gt_q) {
        const double r = e.pq_over_p_minus_q();
        double acc = 0.0;
        for (const auto& c : fn.components) acc += std::pow(c.value, r);
        fn.value = std::pow(acc, 1.0 / r);
    } else {
        for (const auto& c : fn.components) fn.value = std::max(fn.value, c.value);
    }
    return fn;
}

} // namespace hardytree
