#pragma once

#include "hardytree/cuts.hpp"
#include "hardytree/exponents.hpp"
#include "hardytree/tree.hpp"

namespace hardytree {

// beta_{D,Gamma}: minimal l_p norm of a function phi >= 0 supported on D
// whose u-weighted path sums from the cut base to every member of Gamma all
// equal one. Evaluated exactly by the join recursion over the cut: the base
// case D={xi*} gives 1/u(xi*), and an expanded vertex combines the children
// values beta_j (zero when the child branch carries no Gamma vertex) through
// 1/beta = ||(u(xi*), ||(beta_j)||_p^{-1})||_{p'}.
double beta_recursive(const WeightedTree& wt, const Exponent& p, const Cut& cut);

// The same quantity computed independently of the recursion. By duality,
// beta = 1 / min{ ||A^T y||_{p'} : y in the probability simplex }, where row
// gamma of A holds u(v) for v on the path from the base to gamma. The
// minimization runs entropic mirror descent followed by active-set Newton
// refinement, and terminates on a convexity-gap certificate, so the result
// carries relative accuracy tol. Single-constraint cuts use the Hoelder
// closed form for any p in [1, inf]; cuts with several constraints require
// 1 < p < inf.
double beta_oracle(const WeightedTree& wt, const Exponent& p, const Cut& cut, double tol = 1e-9);

} // namespace hardytree
