#include "hardytree/beta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hardytree/errors.hpp"

namespace hardytree {

double beta_recursive(const WeightedTree& wt, const Exponent& p, const Cut& cut) {
    validate_cut(wt.tree, cut);
    const double pv = p.value();
    const double pc = p.conjugate().value();
    std::vector<char> in_d(wt.size(), 0), in_g(wt.size(), 0);
    for (VertexId v : cut.d_vertices) in_d[v] = 1;
    for (VertexId v : cut.gamma) in_g[v] = 1;

    auto rec = [&](auto&& self, VertexId v) -> double {
        bool expanded = false;
        for (VertexId c : wt.tree.children(v))
            if (in_d[c]) {
                expanded = true;
                break;
            }
        if (!expanded) return in_g[v] ? 1.0 / wt.u[v] : 0.0;
        std::vector<double> betas;
        for (VertexId c : wt.tree.children(v)) betas.push_back(self(self, c));
        const double s = power_sum_norm(betas.data(), betas.data() + betas.size(), pv);
        if (!(s > 0.0)) return 0.0;  // no Gamma vertex below v
        const double pair[2] = {wt.u[v], 1.0 / s};
        return 1.0 / power_sum_norm(pair, pair + 2, pc);
    };
    return rec(rec, cut.base);
}

namespace {

// Constraint matrix of the minimization behind beta: one row per Gamma
// vertex holding u(v) along its path from the base, over the union of those
// paths as variables.
struct PathSystem {
    std::size_t m = 0;                 // constraints
    std::size_t n = 0;                 // variables
    std::vector<double> a;             // row-major m x n
    double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

PathSystem build_system(const WeightedTree& wt, const Cut& cut) {
    std::vector<std::vector<VertexId>> paths;
    paths.reserve(cut.gamma.size());
    std::vector<VertexId> skeleton;
    for (VertexId g : cut.gamma) {
        paths.push_back(path_segment(wt.tree, cut.base, g));
        skeleton.insert(skeleton.end(), paths.back().begin(), paths.back().end());
    }
    std::sort(skeleton.begin(), skeleton.end());
    skeleton.erase(std::unique(skeleton.begin(), skeleton.end()), skeleton.end());
    std::vector<std::size_t> col(wt.size(), 0);
    for (std::size_t j = 0; j < skeleton.size(); ++j) col[skeleton[j]] = j;

    PathSystem sys;
    sys.m = paths.size();
    sys.n = skeleton.size();
    sys.a.assign(sys.m * sys.n, 0.0);
    for (std::size_t i = 0; i < sys.m; ++i)
        for (VertexId v : paths[i]) sys.a[i * sys.n + col[v]] = wt.u[v];
    return sys;
}

// Solves mat x = b in place by Gaussian elimination with partial pivoting;
// returns false when a pivot vanishes.
bool solve_dense(std::vector<double>& mat, std::vector<double>& b, std::size_t dim) {
    for (std::size_t col = 0; col < dim; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < dim; ++r)
            if (std::abs(mat[r * dim + col]) > std::abs(mat[piv * dim + col])) piv = r;
        if (!(std::abs(mat[piv * dim + col]) > 0.0)) return false;
        if (piv != col) {
            for (std::size_t c = col; c < dim; ++c)
                std::swap(mat[piv * dim + c], mat[col * dim + c]);
            std::swap(b[piv], b[col]);
        }
        for (std::size_t r = col + 1; r < dim; ++r) {
            const double f = mat[r * dim + col] / mat[col * dim + col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < dim; ++c) mat[r * dim + c] -= f * mat[col * dim + c];
            b[r] -= f * b[col];
        }
    }
    for (std::size_t r = dim; r-- > 0;) {
        double s = b[r];
        for (std::size_t c = r + 1; c < dim; ++c) s -= mat[r * dim + c] * b[c];
        b[r] = s / mat[r * dim + r];
    }
    return true;
}

} // namespace

double beta_oracle(const WeightedTree& wt, const Exponent& p, const Cut& cut, double tol) {
    validate_cut(wt.tree, cut);
    if (!(tol > 0.0)) throw InvalidInput("tol must be positive");
    const double pc = p.conjugate().value();

    if (cut.gamma.size() == 1) {
        // One constraint <a, phi> = 1: Hoelder gives min ||phi||_p = 1/||a||_{p'}.
        const auto path = path_segment(wt.tree, cut.base, cut.gamma.front());
        std::vector<double> coeff;
        coeff.reserve(path.size());
        for (VertexId v : path) coeff.push_back(wt.u[v]);
        return 1.0 / power_sum_norm(coeff.data(), coeff.data() + coeff.size(), pc);
    }
    if (p.value() <= 1.0 || p.is_infinite())
        throw InvalidInput("beta_oracle needs 1 < p < inf for cuts with several constraints");

    const PathSystem sys = build_system(wt, cut);
    const std::size_t m = sys.m, n = sys.n;

    std::vector<double> y(m, 1.0 / static_cast<double>(m));
    std::vector<double> z(n, 0.0), zt(n, 0.0), grad(m, 0.0), tgrad(m, 0.0), trial(m, 0.0);

    // h(y) = ||A^T y||_{p'}; its gradient is h^{1-p'} A z^{p'-1}.
    auto objective = [&](const std::vector<double>& yy, std::vector<double>& zz) {
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < m; ++i) s += sys.at(i, j) * yy[i];
            zz[j] = s;
        }
        return power_sum_norm(zz.data(), zz.data() + n, pc);
    };

    // Convexity gives h(y') >= <grad, y'> >= min_i grad_i on the simplex, so
    // gap = h - min_i grad_i certifies the distance to the optimum.
    auto certificate = [&](const std::vector<double>& yy, double hh,
                           const std::vector<double>& zz, std::vector<double>& gg,
                           double& gmin) {
        const double hfac = std::pow(hh, 1.0 - pc);
        for (std::size_t i = 0; i < m; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double aij = sys.at(i, j);
                if (aij > 0.0) s += aij * std::pow(zz[j], pc - 1.0);
            }
            gg[i] = hfac * s;
        }
        double low = gg[0], gdot = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            low = std::min(low, gg[i]);
            gdot += gg[i] * yy[i];
        }
        gmin = low;
        return gdot - low;
    };

    double h = objective(y, z);
    double gmin = 0.0;
    double gap = certificate(y, h, z, grad, gmin);

    // A trial replaces the iterate when it lowers h, or, once h is flat up to
    // evaluation noise, when it clearly lowers the gap: near the optimum h
    // moves quadratically in the remaining error while the gap moves
    // linearly, so the gap keeps resolving progress after h differences
    // underflow. The noise allowance of a few dozen ulps admits steps whose
    // true h change is sub-ulp; any creep it permits stays orders of
    // magnitude below the certificate because iterations are capped. The gap
    // branch demands a fixed relative improvement, which rules out cycles
    // among points whose h agree to rounding noise.
    auto accept = [&](const std::vector<double>& cand) {
        const double h_trial = objective(cand, zt);
        if (!(h_trial <= h * (1.0 + 1e-14))) return false;
        double tgmin = 0.0;
        const double tgap = certificate(cand, h_trial, zt, tgrad, tgmin);
        if (!(h_trial < h) && !(tgap < gap * (1.0 - 1e-3))) return false;
        y = cand;
        h = h_trial;
        z.swap(zt);
        grad.swap(tgrad);
        gmin = tgmin;
        gap = tgap;
        return true;
    };

    // Phase 1: entropic mirror descent from the uniform point moves into the
    // neighborhood of the optimum. The update exponent is centered at the
    // smallest gradient so it never overflows.
    const double coarse = std::max(tol, 1e-3);
    double step = 1.0;
    for (int it = 0; it < 50000 && gap > coarse * h; ++it) {
        bool accepted = false;
        for (int halvings = 0; halvings < 80 && !accepted; ++halvings) {
            double total = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                trial[i] = y[i] * std::exp(-step * (grad[i] - gmin));
                total += trial[i];
            }
            if (total > 0.0) {
                for (std::size_t i = 0; i < m; ++i) trial[i] /= total;
                if (accept(trial)) {
                    step *= 1.5;
                    accepted = true;
                }
            }
            if (!accepted) step *= 0.5;
        }
        if (!accepted) break;  // no representable step improves h or the gap
    }
    if (gap <= tol * h) return 1.0 / h;

    // Slope in t of F(y) = ||A^T y||_{p'}^{p'} / p' along base + t d; its
    // sign matches the slope of h along the same ray.
    std::vector<double> dir(m, 0.0);
    auto ray_slope = [&](const std::vector<double>& base, const std::vector<double>& d, double t) {
        double slope = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            double zj = 0.0, dj = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                zj += sys.at(i, j) * (base[i] + t * d[i]);
                dj += sys.at(i, j) * d[i];
            }
            if (zj > 0.0 && dj != 0.0) slope += dj * std::pow(zj, pc - 1.0);
        }
        return slope;
    };

    // Minimizes h along base + t d over (0, t_hi] by bisecting the slope of
    // the convex section; returns t_hi when the slope stays negative. The
    // caller guarantees a negative slope at t = 0.
    auto line_search = [&](const std::vector<double>& base, const std::vector<double>& d,
                           double t_hi) {
        if (ray_slope(base, d, t_hi) <= 0.0) return t_hi;
        double lo = 0.0, hi = t_hi;
        for (int b = 0; b < 200 && lo < hi; ++b) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            (ray_slope(base, d, mid) < 0.0 ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };

    // Moves from y along d to parameter t, zeroing coordinates the step
    // drives to the boundary and renormalizing, then runs the acceptance.
    auto move = [&](const std::vector<double>& d, double t) {
        double total = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            trial[i] = d[i] == 0.0 ? y[i] : std::max(0.0, y[i] + t * d[i]);
            total += trial[i];
        }
        if (!(total > 0.0)) return false;
        for (std::size_t i = 0; i < m; ++i) trial[i] /= total;
        return accept(trial);
    };

    // Phase 2: active-set Newton refinement. Each step solves the Newton
    // system of F restricted to the supported coordinates under the
    // unit-mass constraint, then minimizes h exactly along that ray, so a
    // coordinate is dropped only when the boundary truly minimizes the
    // section; that matters for p > 2, where F has a vertical tangent at
    // the boundary and the quadratic model badly overshoots. The quadratic
    // local rate drives the certificate gap to machine precision on badly
    // conditioned systems where first-order steps stall. A dropped
    // coordinate whose gradient falls under the supported ones re-enters
    // through a line search toward its vertex.
    std::vector<std::size_t> support;
    std::vector<double> mat, rhs;
    int readds = 0;
    for (int nit = 0; nit < 400 && gap > tol * h; ++nit) {
        // A coordinate driven to a negligible share contributes nothing the
        // tolerance can see, but its vanishing image blows up the curvature
        // terms and its boundary caps every ray, so it is flushed to zero.
        double ymax = 0.0;
        for (std::size_t i = 0; i < m; ++i) ymax = std::max(ymax, y[i]);
        double mass = 0.0;
        bool flushed = false;
        for (std::size_t i = 0; i < m; ++i) {
            if (y[i] > 0.0 && y[i] < 1e-18 * ymax) {
                y[i] = 0.0;
                flushed = true;
            }
            mass += y[i];
        }
        if (flushed) {
            for (std::size_t i = 0; i < m; ++i) y[i] /= mass;
            h = objective(y, z);
            gap = certificate(y, h, z, grad, gmin);
        }
        support.clear();
        for (std::size_t i = 0; i < m; ++i)
            if (y[i] > 0.0) support.push_back(i);
        const std::size_t s = support.size();
        const std::size_t dim = s + 1;
        mat.assign(dim * dim, 0.0);
        rhs.assign(dim, 0.0);
        for (std::size_t a = 0; a < s; ++a) {
            double g = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double aij = sys.at(support[a], j);
                if (aij > 0.0 && z[j] > 0.0) g += aij * std::pow(z[j], pc - 1.0);
            }
            rhs[a] = -g;
            for (std::size_t b = a; b < s; ++b) {
                double hab = 0.0;
                for (std::size_t j = 0; j < n; ++j) {
                    const double aij = sys.at(support[a], j);
                    const double abj = sys.at(support[b], j);
                    if (aij > 0.0 && abj > 0.0 && z[j] > 0.0)
                        hab += aij * abj * std::pow(z[j], pc - 2.0);
                }
                mat[a * dim + b] = mat[b * dim + a] = (pc - 1.0) * hab;
            }
            mat[a * dim + s] = mat[s * dim + a] = 1.0;
        }
        // A tiny ridge keeps degenerate faces (proportional rows) solvable.
        double ridge = 0.0;
        for (std::size_t a = 0; a < s; ++a) ridge = std::max(ridge, mat[a * dim + a]);
        ridge *= 1e-13;
        for (std::size_t a = 0; a < s; ++a) mat[a * dim + a] += ridge;

        bool moved = false;
        if (solve_dense(mat, rhs, dim)) {
            std::fill(dir.begin(), dir.end(), 0.0);
            for (std::size_t a = 0; a < s; ++a) dir[support[a]] = rhs[a];
            double t_hi = std::numeric_limits<double>::infinity();
            for (std::size_t a = 0; a < s; ++a)
                if (rhs[a] < 0.0) t_hi = std::min(t_hi, y[support[a]] / -rhs[a]);
            if (std::isfinite(t_hi) && ray_slope(y, dir, 0.0) < 0.0)
                moved = move(dir, line_search(y, dir, t_hi));
            // Close to the optimum the ray slope drowns in rounding noise
            // and the section minimizer loses meaning, yet damped Newton
            // steps still equalize the gradients through the gap term of
            // the acceptance. Damping matters because for p > 2 the third
            // derivative of the objective is unbounded near the boundary,
            // so a full step overshoots the gradient of a near-zero
            // coordinate past the others and widens the certificate.
            for (double t = std::min(1.0, t_hi); !moved && t > 1e-12; t *= 0.5)
                moved = move(dir, t);
        }
        if (!moved) {
            // Stationary on this face. The face is wrong when any dropped
            // coordinate holds a gradient below the supported level; every
            // such coordinate re-enters with its own line-searched sliver of
            // mass, and they re-enter in a single trial because the
            // certificate is pinned by the lowest outside gradient, so
            // restoring one coordinate at a time cannot shrink the gap while
            // another stays dropped.
            if (readds >= 8) break;
            ++readds;
            const double face = gmin + gap;
            std::vector<std::size_t> entering;
            for (std::size_t i = 0; i < m; ++i)
                if (y[i] == 0.0 && grad[i] < face * (1.0 - 1e-12)) entering.push_back(i);
            std::sort(entering.begin(), entering.end(),
                      [&](std::size_t a, std::size_t b) { return grad[a] < grad[b]; });
            std::vector<double> cand = y;
            bool any = false;
            for (const std::size_t b : entering) {
                for (std::size_t i = 0; i < m; ++i) dir[i] = (i == b ? 1.0 : 0.0) - cand[i];
                if (!(ray_slope(cand, dir, 0.0) < 0.0)) continue;
                const double t = line_search(cand, dir, 1.0);
                double total = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    cand[i] = std::max(0.0, cand[i] + t * dir[i]);
                    total += cand[i];
                }
                for (std::size_t i = 0; i < m; ++i) cand[i] /= total;
                any = true;
            }
            if (!any || !accept(cand)) break;
        }
    }
    if (gap <= tol * h) return 1.0 / h;
    throw ConvergenceFailure("beta_oracle: certificate gap did not reach tol within budget");
}

} // namespace hardytree
