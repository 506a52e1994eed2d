#include "blm/univariate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "blm/numeric.hpp"

namespace blm {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

// ---------------------------------------------------------------------------
// MarginalDistribution defaults

double MarginalDistribution::hazard(double x) const {
  const double s = survival(x);
  if (s < 1e-280) {
    throw std::domain_error(describe() +
                            ": hazard undefined, survival vanishes at x=" +
                            std::to_string(x));
  }
  return density(x) / s;
}

double MarginalDistribution::quantile(double p) const {
  if (!(p >= 0.0 && p < 1.0)) {
    throw std::invalid_argument(describe() + ": quantile requires p in [0,1)");
  }
  if (p == 0.0) return left_extremity();
  return survival_inverse(1.0 - p);
}

double MarginalDistribution::survival_inverse(double u) const {
  if (!(u > 0.0 && u <= 1.0)) {
    throw std::invalid_argument(describe() +
                                ": survival_inverse requires u in (0,1]");
  }
  if (survival(0.0) <= u) return 0.0;
  double hi = std::max(1.0, left_extremity() + 1.0);
  while (survival(hi) > u) {
    hi *= 2.0;
    if (hi > 1e15) {
      throw std::runtime_error(describe() +
                               ": survival_inverse bracket expansion failed");
    }
  }
  const double xtol = std::max(1e-12, 1e-14 * hi);
  return num::solve_monotone([this](double x) { return survival(x); }, u, 0.0,
                             hi, xtol);
}

double MarginalDistribution::lst(double s) const {
  if (s < 0.0) throw std::invalid_argument("lst requires s >= 0");
  if (s == 0.0) return 1.0;
  const double horizon = std::min(tail_horizon(), 46.0 / s);
  const double integral = num::integrate_or_throw(
      [this, s](double x) { return std::exp(-s * x) * survival(x); }, 0.0,
      horizon, 1e-12, 1e-11, "marginal lst");
  return 1.0 - s * integral;
}

double MarginalDistribution::mgf(double s) const {
  if (s == 0.0) return 1.0;
  if (s < 0.0) return lst(-s);
  auto integrand = [this, s](double x) {
    return std::exp(s * x) * survival(x);
  };
  // existence is decided numerically: extend the horizon until the added
  // tail is negligible, and report divergence when it never is
  double horizon = tail_horizon();
  double total = num::integrate(integrand, 0.0, horizon, 1e-12, 1e-11).value;
  for (int round = 0; std::isfinite(total) && round < 6; ++round) {
    const double ext =
        num::integrate(integrand, horizon, 2.0 * horizon, 1e-12, 1e-11).value;
    const double cur = total + ext;
    if (std::isfinite(cur) &&
        std::abs(ext) <= std::max(1e-10, 1e-10 * std::abs(cur))) {
      return 1.0 + s * cur;
    }
    total = cur;
    horizon *= 2.0;
  }
  throw std::domain_error(describe() + ": mgf diverges at s=" +
                          std::to_string(s));
}

// ---------------------------------------------------------------------------
// ExponentialMarginal

ExponentialMarginal::ExponentialMarginal(double rate) : rate_(rate) {
  require(std::isfinite(rate) && rate > 0.0,
          "exponential marginal requires rate > 0");
}

double ExponentialMarginal::survival(double x) const {
  return x <= 0.0 ? 1.0 : std::exp(-rate_ * x);
}

double ExponentialMarginal::cdf(double x) const {
  return x <= 0.0 ? 0.0 : -std::expm1(-rate_ * x);
}

double ExponentialMarginal::density(double x) const {
  return x < 0.0 ? 0.0 : rate_ * std::exp(-rate_ * x);
}

double ExponentialMarginal::density_derivative(double x) const {
  return x < 0.0 ? 0.0 : -rate_ * rate_ * std::exp(-rate_ * x);
}

double ExponentialMarginal::quantile(double p) const {
  if (!(p >= 0.0 && p < 1.0)) {
    throw std::invalid_argument(describe() + ": quantile requires p in [0,1)");
  }
  return -std::log1p(-p) / rate_;
}

double ExponentialMarginal::survival_inverse(double u) const {
  if (!(u > 0.0 && u <= 1.0)) {
    throw std::invalid_argument(describe() +
                                ": survival_inverse requires u in (0,1]");
  }
  return -std::log(u) / rate_;
}

double ExponentialMarginal::raw_moment(int k) const {
  require(k >= 1, "raw_moment requires k >= 1");
  return num::factorial(k) / std::pow(rate_, k);
}

double ExponentialMarginal::lst(double s) const {
  if (s < 0.0) throw std::invalid_argument("lst requires s >= 0");
  return rate_ / (rate_ + s);
}

double ExponentialMarginal::mgf(double s) const {
  if (s >= rate_) {
    throw std::domain_error(describe() + ": mgf diverges at s=" +
                            std::to_string(s));
  }
  return rate_ / (rate_ - s);
}

std::string ExponentialMarginal::describe() const {
  std::ostringstream os;
  os << "exponential(rate=" << rate_ << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// SignedExponentialMixture

SignedExponentialMixture::SignedExponentialMixture(std::vector<Term> terms) {
  require(!terms.empty(), "signed mixture requires at least one term");
  for (const Term& t : terms) {
    require(std::isfinite(t.weight) && std::isfinite(t.rate) && t.rate > 0.0,
            "signed mixture terms require finite weight and rate > 0");
  }
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.rate < b.rate; });
  // merge equal rates so tail-sign analysis is well defined
  for (const Term& t : terms) {
    if (!terms_.empty() &&
        std::abs(t.rate - terms_.back().rate) <=
            1e-12 * std::max(t.rate, terms_.back().rate)) {
      terms_.back().weight += t.weight;
    } else {
      terms_.push_back(t);
    }
  }
  std::erase_if(terms_, [](const Term& t) { return t.weight == 0.0; });
  require(!terms_.empty(), "signed mixture has no nonzero terms");

  double wsum = 0.0;
  for (const Term& t : terms_) wsum += t.weight;
  require(std::abs(wsum - 1.0) <= 1e-9,
          "signed mixture weights must sum to 1");
  require(terms_.front().weight > 0.0,
          "signed mixture slowest-decaying term must have positive weight");
  min_rate_ = terms_.front().rate;

  // empirical validity: survival in [0,1] and nonincreasing on a geometric
  // grid over [0, 40/min_rate]
  std::vector<double> grid = num::geomspace(4e-8 / min_rate_, 40.0 / min_rate_,
                                            511);
  grid.insert(grid.begin(), 0.0);
  double prev = 2.0;
  for (double x : grid) {
    double s = 0.0;
    for (const Term& t : terms_) s += t.weight * std::exp(-t.rate * x);
    require(s >= -1e-12 && s <= 1.0 + 1e-12,
            "signed mixture survival leaves [0,1]");
    require(s <= prev + 1e-12, "signed mixture survival is not nonincreasing");
    prev = s;
  }
}

double SignedExponentialMixture::survival(double x) const {
  if (x <= 0.0) return 1.0;
  double s = 0.0;
  for (const Term& t : terms_) s += t.weight * std::exp(-t.rate * x);
  return std::clamp(s, 0.0, 1.0);
}

double SignedExponentialMixture::density(double x) const {
  if (x < 0.0) return 0.0;
  double d = 0.0;
  for (const Term& t : terms_) d += t.weight * t.rate * std::exp(-t.rate * x);
  return std::max(d, 0.0);
}

double SignedExponentialMixture::density_derivative(double x) const {
  if (x < 0.0) return 0.0;
  double d = 0.0;
  for (const Term& t : terms_) {
    d -= t.weight * t.rate * t.rate * std::exp(-t.rate * x);
  }
  return d;
}

double SignedExponentialMixture::raw_moment(int k) const {
  require(k >= 1, "raw_moment requires k >= 1");
  const double kfact = num::factorial(k);
  double m = 0.0;
  for (const Term& t : terms_) m += t.weight * kfact / std::pow(t.rate, k);
  return m;
}

double SignedExponentialMixture::lst(double s) const {
  if (s < 0.0) throw std::invalid_argument("lst requires s >= 0");
  double v = 0.0;
  for (const Term& t : terms_) v += t.weight * t.rate / (t.rate + s);
  return v;
}

double SignedExponentialMixture::mgf(double s) const {
  if (s >= min_rate_) {
    throw std::domain_error(describe() + ": mgf diverges at s=" +
                            std::to_string(s));
  }
  double v = 0.0;
  for (const Term& t : terms_) v += t.weight * t.rate / (t.rate - s);
  return v;
}

std::string SignedExponentialMixture::describe() const {
  std::ostringstream os;
  os << "signed_exponential_mixture(";
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) os << " + ";
    os << terms_[i].weight << "*exp(-" << terms_[i].rate << "x)";
  }
  os << ")";
  return os.str();
}

double SignedExponentialMixture::tail_horizon() const {
  double abs_sum = 0.0;
  for (const Term& t : terms_) abs_sum += std::abs(t.weight);
  return (46.0 + std::log(std::max(1.0, abs_sum))) / min_rate_;
}

// ---------------------------------------------------------------------------
// LomaxMarginal

LomaxMarginal::LomaxMarginal(double alpha, double beta)
    : alpha_(alpha), beta_(beta) {
  require(std::isfinite(alpha) && alpha > 0.0 && std::isfinite(beta) &&
              beta > 0.0,
          "lomax marginal requires alpha > 0 and beta > 0");
}

double LomaxMarginal::survival(double x) const {
  return x <= 0.0 ? 1.0 : std::exp(-alpha_ * std::log1p(x / beta_));
}

double LomaxMarginal::density(double x) const {
  if (x < 0.0) return 0.0;
  return (alpha_ / beta_) * std::exp(-(alpha_ + 1.0) * std::log1p(x / beta_));
}

double LomaxMarginal::density_derivative(double x) const {
  if (x < 0.0) return 0.0;
  return -(alpha_ * (alpha_ + 1.0) / (beta_ * beta_)) *
         std::exp(-(alpha_ + 2.0) * std::log1p(x / beta_));
}

double LomaxMarginal::hazard(double x) const {
  if (x < 0.0) x = 0.0;
  return alpha_ / (beta_ + x);
}

double LomaxMarginal::quantile(double p) const {
  if (!(p >= 0.0 && p < 1.0)) {
    throw std::invalid_argument(describe() + ": quantile requires p in [0,1)");
  }
  return beta_ * std::expm1(-std::log1p(-p) / alpha_);
}

double LomaxMarginal::survival_inverse(double u) const {
  if (!(u > 0.0 && u <= 1.0)) {
    throw std::invalid_argument(describe() +
                                ": survival_inverse requires u in (0,1]");
  }
  return beta_ * std::expm1(-std::log(u) / alpha_);
}

double LomaxMarginal::raw_moment(int k) const {
  require(k >= 1, "raw_moment requires k >= 1");
  if (alpha_ <= static_cast<double>(k)) {
    throw std::domain_error(describe() + ": moment of order " +
                            std::to_string(k) + " diverges (alpha <= k)");
  }
  double denom = 1.0;
  for (int j = 1; j <= k; ++j) denom *= alpha_ - j;
  return std::pow(beta_, k) * num::factorial(k) / denom;
}

double LomaxMarginal::mgf(double s) const {
  if (s == 0.0) return 1.0;
  if (s < 0.0) return lst(-s);
  throw std::domain_error(describe() + ": mgf diverges for s > 0");
}

std::string LomaxMarginal::describe() const {
  std::ostringstream os;
  os << "lomax(alpha=" << alpha_ << ", beta=" << beta_ << ")";
  return os.str();
}

double LomaxMarginal::tail_horizon() const {
  return std::min(beta_ * std::pow(1e14, 1.0 / alpha_), 1e200);
}

// ---------------------------------------------------------------------------
// HazardDefinedMarginal

HazardDefinedMarginal::HazardDefinedMarginal(
    std::function<double(double)> hazard_fn, double horizon, int table_size,
    double survival_floor)
    : rate_(std::move(hazard_fn)), horizon_(horizon) {
  require(rate_ != nullptr, "hazard function must be callable");
  require(std::isfinite(horizon) && horizon > 0.0, "horizon must be positive");
  require(table_size >= 16, "hazard table needs at least 16 points");
  require(survival_floor > 0.0 && survival_floor < 1.0,
          "survival floor must lie in (0,1)");

  xs_ = num::geomspace(horizon * 1e-9, horizon, table_size - 1);
  xs_.insert(xs_.begin(), 0.0);
  cumhaz_.resize(xs_.size());
  cumhaz_[0] = 0.0;
  for (std::size_t k = 1; k < xs_.size(); ++k) {
    const double r_here = rate_(xs_[k]);
    require(std::isfinite(r_here) && r_here >= 0.0,
            "hazard function must be finite and nonnegative on the horizon");
    const double cell = num::integrate_or_throw(rate_, xs_[k - 1], xs_[k],
                                                1e-14, 1e-12,
                                                "cumulative hazard cell");
    cumhaz_[k] = cumhaz_[k - 1] + std::max(cell, 0.0);
  }
  if (cumhaz_.back() < -std::log(survival_floor)) {
    throw std::invalid_argument(
        "hazard-defined marginal: survival(" + std::to_string(horizon) +
        ") stays above the floor; cumulative hazard must diverge");
  }
  std::size_t k = 0;
  while (k + 1 < cumhaz_.size() && cumhaz_[k + 1] <= 1e-300) ++k;
  left_extremity_ = xs_[k];
}

double HazardDefinedMarginal::cumulative_hazard(double x) const {
  if (x <= 0.0) return 0.0;
  if (x >= xs_.back()) {
    if (x == xs_.back()) return cumhaz_.back();
    return cumhaz_.back() +
           num::integrate(rate_, xs_.back(), x, 1e-10, 1e-10).value;
  }
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  const std::size_t k = static_cast<std::size_t>(it - xs_.begin()) - 1;
  if (x == xs_[k]) return cumhaz_[k];
  return cumhaz_[k] + num::fixed_gk15(rate_, xs_[k], x);
}

double HazardDefinedMarginal::survival(double x) const {
  return std::exp(-cumulative_hazard(x));
}

double HazardDefinedMarginal::density(double x) const {
  if (x < 0.0) return 0.0;
  return std::max(rate_(x), 0.0) * survival(x);
}

double HazardDefinedMarginal::hazard(double x) const {
  if (x < 0.0) x = 0.0;
  return std::max(rate_(x), 0.0);
}

double HazardDefinedMarginal::density_derivative(double x) const {
  if (x < 0.0) return 0.0;
  // f' = (r' - r^2) * survival; r' by finite differences (one-sided at 0)
  const double step = num::default_step(x);
  double rprime;
  if (x - step < 0.0) {
    rprime = (rate_(x + step) - rate_(x)) / step;
  } else {
    rprime = num::derivative(rate_, x, step);
  }
  const double r = rate_(x);
  return (rprime - r * r) * survival(x);
}

double HazardDefinedMarginal::raw_moment(int k) const {
  require(k >= 1, "raw_moment requires k >= 1");
  auto integrand = [this, k](double x) {
    return k * std::pow(x, k - 1) * survival(x);
  };
  const double head = num::integrate_or_throw(
      integrand, 0.0, 0.5 * horizon_, 1e-11, 1e-9, "hazard-defined moment");
  const double tail =
      num::integrate(integrand, 0.5 * horizon_, horizon_, 1e-11, 1e-9).value;
  // borderline heavy tails are rejected conservatively rather than silently
  // truncated
  if (std::abs(tail) > std::max(1e-7, 1e-6 * std::abs(head))) {
    throw std::domain_error(describe() + ": moment of order " +
                            std::to_string(k) +
                            " does not converge on the horizon");
  }
  return head + tail;
}

std::string HazardDefinedMarginal::describe() const {
  std::ostringstream os;
  os << "hazard_defined(horizon=" << horizon_ << ")";
  return os.str();
}

double HazardDefinedMarginal::tail_horizon() const {
  const auto it = std::lower_bound(cumhaz_.begin(), cumhaz_.end(), 46.0);
  if (it == cumhaz_.end()) return horizon_;
  return xs_[static_cast<std::size_t>(it - cumhaz_.begin())];
}

// ---------------------------------------------------------------------------
// aging classes

std::string to_string(AgingClass cls) {
  switch (cls) {
    case AgingClass::ifr: return "IFR";
    case AgingClass::dfr: return "DFR";
    case AgingClass::ifra: return "IFRA";
    case AgingClass::dfra: return "DFRA";
  }
  return "?";
}

GridReport aging_class(const MarginalDistribution& d, AgingClass cls,
                       std::span<const double> grid, double tol) {
  if (grid.size() < 2) {
    throw std::invalid_argument("aging_class requires at least 2 grid points");
  }
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (!(grid[i] < grid[i + 1])) {
      throw std::invalid_argument("aging_class grid must be increasing");
    }
  }
  const bool average = (cls == AgingClass::ifra || cls == AgingClass::dfra);
  const bool increasing = (cls == AgingClass::ifr || cls == AgingClass::ifra);

  std::vector<double> vals(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid[i];
    if (average) {
      if (!(x > 0.0)) {
        throw std::invalid_argument("IFRA/DFRA grid points must be positive");
      }
      vals[i] = -std::log(std::max(d.survival(x), 1e-300)) / x;
    } else {
      vals[i] = d.hazard(x);
    }
  }

  GridReport report;
  report.check = "aging:" + to_string(cls);
  report.worst_value = std::numeric_limits<double>::infinity();
  report.configurations_tested = grid.size() - 1;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double diff = vals[i + 1] - vals[i];
    const double margin = increasing ? diff : -diff;
    if (margin < report.worst_value) {
      report.worst_value = margin;
      report.witness = {grid[i], grid[i + 1]};
    }
  }
  report.passed = report.worst_value >= -tol;
  return report;
}

Grid default_grid(double theta, int n) {
  Grid g;
  g.xs = num::geomspace(0.05 / theta, 8.0 / theta, n);
  g.ys = g.xs;
  return g;
}

std::vector<double> default_axis(double theta, int n) {
  return num::geomspace(0.05 / theta, 8.0 / theta, n);
}

}  // namespace blm
