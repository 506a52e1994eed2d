#pragma once

#include <functional>
#include <vector>

// Shared numerical kernels: adaptive quadrature, monotone root finding,
// Richardson-extrapolated derivatives, and the few special functions the
// statistical tests need.
namespace blm::num {

struct IntegralResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  bool converged = false;
};

// Adaptive Gauss-Kronrod 15(7) over [a, b]. Worst-interval-first refinement
// until the summed error estimate meets max(abs_tol, rel_tol * |value|).
IntegralResult integrate(const std::function<double(double)>& f, double a,
                         double b, double abs_tol = 1e-10,
                         double rel_tol = 1e-10, int max_intervals = 4000);

// Single 15-point Gauss-Kronrod panel, no refinement. Accurate for
// integrands smooth at the scale of [a, b].
double fixed_gk15(const std::function<double(double)>& f, double a, double b);

// integrate() that throws std::runtime_error when the estimate does not
// converge; `what` names the integral in the message.
double integrate_or_throw(const std::function<double(double)>& f, double a,
                          double b, double abs_tol, double rel_tol,
                          const char* what);

// Solves f(x) = target for monotone f on a bracket [lo, hi].
// Bisection with secant acceleration; terminates on |hi - lo| <= xtol.
double solve_monotone(const std::function<double(double)>& f, double target,
                      double lo, double hi, double xtol = 1e-12,
                      int max_iter = 240);

// Central difference with one Richardson step.
double derivative(const std::function<double(double)>& f, double x,
                  double step);
double second_derivative(const std::function<double(double)>& f, double x,
                         double step);

// Step rule used by the dependence checks: h = max(1e-5, 1e-5 * |x|).
double default_step(double x);

// Exact integer factorial / binomial in double; throws std::overflow_error
// once the result exceeds double range.
double factorial(int n);
double binomial(int n, int k);

// Regularized lower incomplete gamma P(a, x), and the chi-square CDF built
// on it.
double regularized_gamma_lower(double a, double x);
double chi_square_cdf(double x, double dof);

// Determinant of a dense n x n matrix (row major) by LU with partial
// pivoting. The matrix is destroyed.
double determinant(std::vector<double>& m, int n);

// Grids. geomspace requires 0 < lo < hi.
std::vector<double> linspace(double lo, double hi, int n);
std::vector<double> geomspace(double lo, double hi, int n);

}  // namespace blm::num
