#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>

#include "blm/blm_core.hpp"
#include "blm/families.hpp"
#include "blm/report.hpp"

namespace blm {

// Bivariate nonnegative function under test: a survival function, density,
// copula, or anything user-supplied.
struct Kernel {
  std::function<double(double, double)> fn;
  std::string label;
};

Kernel survival_kernel(const BlmDistribution& d);
Kernel density_kernel(const BlmDistribution& d);
Kernel cdf_kernel(const BlmDistribution& d);
Kernel survival_kernel(const GmoDistribution& d);
// Survival copula evaluated over (0,1)^2.
Kernel survival_copula_kernel(const BlmDistribution& d);

// Total positivity of order 2: every 2x2 minor of (K(x_i, y_j)) over
// increasing pairs is nonnegative. Margins are normalized by the product of
// row maxima, so tol is relative; the report's worst_value is the smallest
// normalized minor.
GridReport tp2_check(const Kernel& k, const Grid& g, double tol = 1e-9);

// Reverse rule of order 2: minors nonpositive (sign mirror of tp2_check).
GridReport rr2_check(const Kernel& k, const Grid& g, double tol = 1e-9);

// TP_r: s x s minors for every s in 2..r, over all contiguous windows plus
// `trials` random increasing index selections per order. Sound for "fail";
// probabilistic evidence for "pass".
GridReport tp_order_check(const Kernel& k, const Grid& g, int r,
                          double tol = 1e-9, int trials = 200,
                          std::uint64_t seed = 20240901);

// Survival-function TP2 characterization: both marginals IFR on the grid
// and Fbar(x)*Gbar(x) <= exp(-theta x) at the diagonal points.
GridReport theorem6_condition(const BlmDistribution& d, const Grid& g,
                              double tol = 1e-9);

// Density TP2 characterization for absolutely continuous BLM laws, checked
// pointwise on a 1-D grid in u = |x - y|:
//   (i)  h_i'(u)^2 >= h_i''(u) h_i(u), i = 1,2
//   (ii) h1(u) h2(u) <= h1(0+)^2 exp(-theta u)
// plus the diagonal compatibility h1(0+) = h2(0+). Requires atom ~ 0 and
// h_i > 0 on the grid. The derivatives come from finite differences, so the
// default tolerance is the finite-difference one.
GridReport theorem7_density_condition(const BlmDistribution& d,
                                      std::span<const double> grid,
                                      double tol = 1e-6);

// Local dependence gamma(x,y) = d^2/dxdy log K. For BLM densities the
// closed form (h'^2 - h'' h)/h^2 at |x-y| is used; for generic kernels a
// Richardson-extrapolated mixed difference of log K.
double local_dependence(const BlmDistribution& d, double x, double y);
double local_dependence(const Kernel& k, double x, double y);

// Positive quadrant dependence: Hbar(x,y) >= Fbar(x) Gbar(y) on the grid
// (margins normalized).
GridReport pqd_check(const BlmDistribution& d, const Grid& g,
                     double tol = 1e-9);
GridReport pqd_check(const GmoDistribution& d, const Grid& g,
                     double tol = 1e-9);

// Survival copula C^(u,v) = Hbar(Fbar^{-1}(u), Gbar^{-1}(v)), u,v in (0,1).
double survival_copula(const BlmDistribution& d, double u, double v);

}  // namespace blm
