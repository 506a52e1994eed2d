#include "blm/blm_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "blm/numeric.hpp"

namespace blm {

namespace {

constexpr double kExactTol = 1e-12;   // analytic identities
constexpr double kGridTol = 1e-10;    // pointwise grid checks

CheckResult grid_min_check(std::string name,
                           const std::vector<double>& axis,
                           const std::function<double(double)>& margin_at,
                           double tol) {
  CheckResult c;
  c.name = std::move(name);
  c.margin = std::numeric_limits<double>::infinity();
  for (double x : axis) {
    const double m = margin_at(x);
    if (m < c.margin) {
      c.margin = m;
      c.worst_x = x;
    }
  }
  c.passed = c.margin >= -tol;
  return c;
}

void finalize(ValidationReport& report) {
  report.passed = std::all_of(report.checks.begin(), report.checks.end(),
                              [](const CheckResult& c) { return c.passed; });
}

[[noreturn]] void reject(const std::string& who,
                         const ValidationReport& report) {
  for (const CheckResult& c : report.checks) {
    if (!c.passed) {
      std::ostringstream os;
      os << who << " rejected: failed " << c.name << " (margin " << c.margin
         << " at x=" << c.worst_x << ")";
      throw ValidationError(os.str(), report);
    }
  }
  throw ValidationError(who + " rejected", report);
}

}  // namespace

const CheckResult* ValidationReport::find(std::string_view prefix) const {
  for (const CheckResult& c : checks) {
    if (std::string_view(c.name).substr(0, prefix.size()) == prefix) return &c;
  }
  return nullptr;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (const CheckResult& c : checks) {
    os << (c.passed ? "pass" : "FAIL") << "  " << c.name << "  margin="
       << c.margin << " at x=" << c.worst_x << "\n";
  }
  return os.str();
}

std::vector<double> validation_axis(double theta) {
  const double hi = 40.0 / theta;
  std::vector<double> axis = num::geomspace(hi * 1e-7, hi, 511);
  axis.insert(axis.begin(), 0.0);
  return axis;
}

std::string to_string(Side side) {
  return side == Side::x_minus_y ? "X_minus_Y" : "Y_minus_X";
}

// ---------------------------------------------------------------------------
// BlmDistribution

BlmDistribution::BlmDistribution(MarginalPtr f, MarginalPtr g, double theta,
                                 ValidationReport report)
    : f_(std::move(f)),
      g_(std::move(g)),
      theta_(theta),
      report_(std::move(report)) {
  atom_ = (f_->density(0.0) + g_->density(0.0)) / theta_ - 1.0;
}

double BlmDistribution::survival(double x, double y) const {
  x = std::max(x, 0.0);
  y = std::max(y, 0.0);
  const double v = (x >= y) ? std::exp(-theta_ * y) * f_->survival(x - y)
                            : std::exp(-theta_ * x) * g_->survival(y - x);
  return std::clamp(v, 0.0, 1.0);
}

double BlmDistribution::density(double x, double y) const {
  if (x == y) {
    throw std::domain_error(
        "blm density is undefined on the diagonal; the diagonal carries an "
        "atom (see atom_mass)");
  }
  return (x > y) ? std::exp(-theta_ * y) * h1(x - y)
                 : std::exp(-theta_ * x) * h2(y - x);
}

double BlmDistribution::atom_mass() const {
  if (atom_ < 0.0 && atom_ >= -kExactTol) return 0.0;
  if (atom_ > 1.0 && atom_ <= 1.0 + kExactTol) return 1.0;
  return atom_;
}

double BlmDistribution::diff_tail(double t, Side side) const {
  if (t < 0.0) throw std::invalid_argument("diff_tail requires t >= 0");
  const MarginalDistribution& m = (side == Side::x_minus_y) ? *f_ : *g_;
  const double v = m.survival(t) - m.density(t) / theta_;
  if (v < -kExactTol) {
    throw std::logic_error(
        "diff_tail came out negative; the distribution violates the "
        "difference-tail law (invalid parameters?)");
  }
  return std::clamp(v, 0.0, 1.0);
}

BlmDecomposition BlmDistribution::decompose() const {
  BlmDecomposition d;
  d.weight_s = std::clamp(atom_mass(), 0.0, 1.0);
  d.weight_ac = 1.0 - d.weight_s;
  const double theta = theta_;
  d.singular_part = [theta](double x, double y) {
    return std::exp(-theta * std::max(std::max(x, 0.0), std::max(y, 0.0)));
  };
  d.ac_defined = d.weight_ac > 0.0;
  if (d.ac_defined) {
    auto self = *this;
    const double ws = d.weight_s;
    const double wa = d.weight_ac;
    auto singular = d.singular_part;
    d.ac_part = [self, ws, wa, singular](double x, double y) {
      return (self.survival(x, y) - ws * singular(x, y)) / wa;
    };
  }
  return d;
}

double BlmDistribution::h1(double u) const {
  return theta_ * f_->density(u) + f_->density_derivative(u);
}

double BlmDistribution::h2(double u) const {
  return theta_ * g_->density(u) + g_->density_derivative(u);
}

// ---------------------------------------------------------------------------
// make_blm

BlmDistribution make_blm(MarginalPtr f, MarginalPtr g, double theta,
                         ValidationMode mode) {
  if (!f || !g) throw std::invalid_argument("make_blm: null marginal");
  if (!(std::isfinite(theta) && theta > 0.0)) {
    throw std::invalid_argument("make_blm: theta must be positive");
  }

  const std::vector<double> axis = validation_axis(theta);
  const double f0 = f->density(0.0);
  const double g0 = g->density(0.0);

  ValidationReport report;
  {
    CheckResult c;
    c.name = "condition (vi): f(0) v g(0) <= theta <= f(0)+g(0)";
    c.margin = std::min(theta - std::max(f0, g0), (f0 + g0) - theta);
    c.worst_x = 0.0;
    c.passed = c.margin >= -kExactTol * theta;
    report.checks.push_back(c);
  }
  report.checks.push_back(grid_min_check(
      "condition (vii): theta*f(x)+f'(x) >= 0", axis,
      [&](double x) { return theta * f->density(x) + f->density_derivative(x); },
      kGridTol));
  report.checks.push_back(grid_min_check(
      "condition (vii): theta*g(y)+g'(y) >= 0", axis,
      [&](double y) { return theta * g->density(y) + g->density_derivative(y); },
      kGridTol));

  // condition (iii): exp(theta x) f(x) nondecreasing, checked as relative
  // forward differences along the grid
  auto monotone_check = [&](std::string name,
                            const MarginalDistribution& m) -> CheckResult {
    CheckResult c;
    c.name = std::move(name);
    c.margin = std::numeric_limits<double>::infinity();
    double prev = std::exp(theta * axis[0]) * m.density(axis[0]);
    for (std::size_t i = 1; i < axis.size(); ++i) {
      const double cur = std::exp(theta * axis[i]) * m.density(axis[i]);
      const double scale = std::max({std::abs(prev), std::abs(cur), 1e-300});
      const double margin = (cur - prev) / scale;
      if (margin < c.margin) {
        c.margin = margin;
        c.worst_x = axis[i];
      }
      prev = cur;
    }
    c.passed = c.margin >= -kGridTol;
    return c;
  };
  report.checks.push_back(
      monotone_check("condition (iii): exp(theta x) f(x) nondecreasing", *f));
  report.checks.push_back(
      monotone_check("condition (iii): exp(theta x) g(x) nondecreasing", *g));

  report.checks.push_back(grid_min_check(
      "condition (iv): F(x)+G(x) >= 1-exp(-theta x)", axis,
      [&](double x) {
        return f->cdf(x) + g->cdf(x) - (-std::expm1(-theta * x));
      },
      kExactTol));

  finalize(report);
  if (!report.passed && mode == ValidationMode::strict) {
    reject("make_blm", report);
  }
  return BlmDistribution(std::move(f), std::move(g), theta, std::move(report));
}

// ---------------------------------------------------------------------------
// from_hazards

BlmDistribution from_hazards(std::function<double(double)> r1,
                             std::function<double(double)> r2, double theta,
                             ValidationMode mode, double horizon) {
  if (!r1 || !r2) throw std::invalid_argument("from_hazards: null hazard");
  if (!(std::isfinite(theta) && theta > 0.0)) {
    throw std::invalid_argument("from_hazards: theta must be positive");
  }
  const std::vector<double> axis = validation_axis(theta);

  ValidationReport report;
  auto rate_deriv = [](const std::function<double(double)>& r, double x) {
    const double step = num::default_step(x);
    if (x - step < 0.0) return (r(x + step) - r(x)) / step;
    return num::derivative(r, x, step);
  };
  for (int i = 0; i < 2; ++i) {
    const auto& r = (i == 0) ? r1 : r2;
    const std::string who = (i == 0) ? "r1" : "r2";
    report.checks.push_back(grid_min_check(
        "Kulkarni (b): 0 <= " + who + " <= theta", axis,
        [&](double x) {
          const double v = r(x);
          return std::min(v, theta - v);
        },
        kExactTol * theta));
    report.checks.push_back(grid_min_check(
        "Kulkarni (d): " + who + "*(theta-" + who + ") + " + who + "' >= 0",
        axis,
        [&](double x) {
          const double v = r(x);
          return v * (theta - v) + rate_deriv(r, x);
        },
        kGridTol * std::max(1.0, theta * theta)));
  }
  {
    CheckResult c;
    c.name = "Kulkarni (e): r1(0)+r2(0) >= theta";
    c.margin = r1(0.0) + r2(0.0) - theta;
    c.passed = c.margin >= -kExactTol * theta;
    report.checks.push_back(c);
  }
  finalize(report);
  if (!report.passed && mode == ValidationMode::strict) {
    reject("from_hazards", report);
  }

  // (c): total cumulative hazard must diverge; the marginal constructor
  // enforces survival decay on the horizon
  MarginalPtr f, g;
  for (int i = 0; i < 2; ++i) {
    CheckResult c;
    c.name = std::string("Kulkarni (c): cumulative hazard of ") +
             ((i == 0) ? "r1" : "r2") + " diverges";
    try {
      auto m = std::make_shared<HazardDefinedMarginal>((i == 0) ? r1 : r2,
                                                       horizon);
      c.margin = m->cumulative_hazard(horizon);
      c.passed = true;
      (i == 0 ? f : g) = std::move(m);
    } catch (const std::invalid_argument&) {
      c.passed = false;
      c.margin = -1.0;
      c.worst_x = horizon;
    }
    report.checks.push_back(c);
  }
  finalize(report);
  if (!report.passed) {
    if (mode == ValidationMode::strict) reject("from_hazards", report);
    throw ValidationError(
        "from_hazards: marginals cannot be materialized, Kulkarni (c) failed",
        report);
  }

  BlmDistribution d = make_blm(std::move(f), std::move(g), theta, mode);
  // merge the letter checks in front of the make_blm report
  ValidationReport merged = report;
  for (const CheckResult& c : d.validation().checks) merged.checks.push_back(c);
  finalize(merged);
  return BlmDistribution(d.margin_x_ptr(), d.margin_y_ptr(), theta,
                         std::move(merged));
}

}  // namespace blm
