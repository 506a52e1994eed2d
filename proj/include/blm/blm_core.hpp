#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "blm/univariate.hpp"

namespace blm {

enum class ValidationMode { strict, permissive };

struct CheckResult {
  std::string name;
  bool passed = true;
  double worst_x = 0.0;  // witness coordinate (0 when the check is global)
  double margin = 0.0;   // signed; negative means violated
};

struct ValidationReport {
  bool passed = true;
  std::vector<CheckResult> checks;

  const CheckResult* find(std::string_view name_prefix) const;
  std::string summary() const;
};

// Construction-time rejection in strict mode; the message names the failed
// validity clause and the full report rides along.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(const std::string& msg, ValidationReport report)
      : std::runtime_error(msg), report_(std::move(report)) {}
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

enum class Side { x_minus_y, y_minus_x };

struct BlmDecomposition {
  double weight_ac = 0.0;
  double weight_s = 0.0;
  bool ac_defined = false;  // false when weight_ac == 0
  std::function<double(double, double)> ac_part;
  std::function<double(double, double)> singular_part;
};

// Bivariate lack-of-memory distribution: survival
//   exp(-theta*y) * Fbar(x-y)   for x >= y
//   exp(-theta*x) * Gbar(y-x)   for y >= x
// with P(X=Y) = [f(0)+g(0)]/theta - 1. Immutable and shareable across
// threads; all validation happens at construction.
class BlmDistribution {
 public:
  double theta() const { return theta_; }
  const MarginalDistribution& margin_x() const { return *f_; }
  const MarginalDistribution& margin_y() const { return *g_; }
  const MarginalPtr& margin_x_ptr() const { return f_; }
  const MarginalPtr& margin_y_ptr() const { return g_; }

  double survival(double x, double y) const;

  // Off-diagonal joint density exp(-theta*min)*h_i(|x-y|); calling it on the
  // diagonal is an error because the diagonal carries an atom, not a
  // density.
  double density(double x, double y) const;

  double atom_mass() const;

  // P(X-Y > t) = Fbar(t) - f(t)/theta (and symmetrically for Y-X).
  double diff_tail(double t, Side side) const;

  BlmDecomposition decompose() const;

  const ValidationReport& validation() const { return report_; }

  // Density slopes h1(u) = theta*f(u) + f'(u), h2(u) = theta*g(u) + g'(u).
  double h1(double u) const;
  double h2(double u) const;

 private:
  friend BlmDistribution make_blm(MarginalPtr, MarginalPtr, double,
                                  ValidationMode);
  friend BlmDistribution from_hazards(std::function<double(double)>,
                                      std::function<double(double)>, double,
                                      ValidationMode, double);
  BlmDistribution(MarginalPtr f, MarginalPtr g, double theta,
                  ValidationReport report);

  MarginalPtr f_, g_;
  double theta_;
  double atom_;
  ValidationReport report_;
};

// Builds the distribution and runs the validity checks:
//   (vi)  f(0) v g(0) <= theta <= f(0) + g(0)
//   (vii) theta*f + f' >= 0 and theta*g + g' >= 0 on the validation grid
//   (iii) exp(theta x) f(x), exp(theta x) g(x) nondecreasing on the grid
//   (iv)  F(x) + G(x) >= 1 - exp(-theta x) on the grid
// Strict mode throws ValidationError naming the first failed clause;
// permissive mode returns the object carrying the failing report.
BlmDistribution make_blm(MarginalPtr f, MarginalPtr g, double theta,
                         ValidationMode mode = ValidationMode::strict);

// Failure-rate construction: marginals exp(-Int r_i) checked against the
// Kulkarni conditions
//   (b) 0 <= r_i <= theta,  (c) cumulative hazard diverges (survival decay
//   on the horizon), (d) r_i*(theta - r_i) + r_i' >= 0, (e) r1(0) + r2(0)
//   >= theta,
// each reported by its letter, then validated through make_blm.
BlmDistribution from_hazards(std::function<double(double)> r1,
                             std::function<double(double)> r2, double theta,
                             ValidationMode mode = ValidationMode::strict,
                             double horizon = 1e6);

// Geometric validation grid: 512 points over [0, 40/theta] (0 included).
std::vector<double> validation_axis(double theta);

std::string to_string(Side side);

}  // namespace blm
