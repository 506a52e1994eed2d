#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "blm/report.hpp"

namespace blm {

// Univariate lifetime law on [0, inf). Implementations are immutable after
// construction and safe for concurrent reads.
//
// quantile/survival_inverse follow the generalized-inverse contract:
// quantile(cdf(x)) <= x and cdf(quantile(p)) >= p.
class MarginalDistribution {
 public:
  virtual ~MarginalDistribution() = default;

  virtual double survival(double x) const = 0;
  virtual double cdf(double x) const { return 1.0 - survival(x); }
  virtual double density(double x) const = 0;
  virtual double density_derivative(double x) const = 0;
  virtual double hazard(double x) const;
  virtual double quantile(double p) const;
  // Smallest x with survival(x) <= u, u in (0, 1].
  virtual double survival_inverse(double u) const;
  virtual double raw_moment(int k) const = 0;
  virtual double left_extremity() const { return 0.0; }

  // Marginal transforms: lst(s) = E[exp(-sX)] for s >= 0, mgf(s) =
  // E[exp(sX)]. Defaults integrate E[e^{sX}] = 1 + s*Int e^{sx} S(x) dx and
  // detect divergence numerically; closed-form families override.
  virtual double lst(double s) const;
  virtual double mgf(double s) const;

  virtual std::string describe() const = 0;

  // Horizon beyond which survival is negligible; used by the numeric
  // defaults for truncation.
  virtual double tail_horizon() const = 0;
};

using MarginalPtr = std::shared_ptr<const MarginalDistribution>;

class ExponentialMarginal final : public MarginalDistribution {
 public:
  explicit ExponentialMarginal(double rate);

  double survival(double x) const override;
  double cdf(double x) const override;
  double density(double x) const override;
  double density_derivative(double x) const override;
  double hazard(double) const override { return rate_; }
  double quantile(double p) const override;
  double survival_inverse(double u) const override;
  double raw_moment(int k) const override;
  double lst(double s) const override;
  double mgf(double s) const override;
  std::string describe() const override;
  double tail_horizon() const override { return 46.0 / rate_; }

  double rate() const { return rate_; }

 private:
  double rate_;
};

// Linear combination of exponential survivals sum_i w_i exp(-r_i x) with
// weights summing to one; weights may be negative (Block-Basu and Freund
// marginals). Validity is checked empirically at construction: survival must
// stay in [0,1] and be nonincreasing on a geometric grid over
// [0, 40/min_rate], and the slowest-decaying term must carry positive
// weight.
class SignedExponentialMixture final : public MarginalDistribution {
 public:
  struct Term {
    double weight;
    double rate;
  };

  explicit SignedExponentialMixture(std::vector<Term> terms);

  double survival(double x) const override;
  double density(double x) const override;
  double density_derivative(double x) const override;
  double raw_moment(int k) const override;
  double lst(double s) const override;
  double mgf(double s) const override;
  std::string describe() const override;
  double tail_horizon() const override;

  const std::vector<Term>& terms() const { return terms_; }
  double min_rate() const { return min_rate_; }

 private:
  std::vector<Term> terms_;  // canonical: merged rates, zero weights dropped
  double min_rate_;
};

// Pareto type II: survival (1 + x/beta)^(-alpha), strictly decreasing
// hazard alpha/(beta + x).
class LomaxMarginal final : public MarginalDistribution {
 public:
  LomaxMarginal(double alpha, double beta);

  double survival(double x) const override;
  double density(double x) const override;
  double density_derivative(double x) const override;
  double hazard(double x) const override;
  double quantile(double p) const override;
  double survival_inverse(double u) const override;
  double raw_moment(int k) const override;
  double mgf(double s) const override;
  std::string describe() const override;
  double tail_horizon() const override;

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

 private:
  double alpha_, beta_;
};

// Marginal defined by a failure-rate function r: survival(x) =
// exp(-Int_0^x r). The cumulative hazard is tabulated once at construction
// (adaptive quadrature per cell over a geometric grid) and queried by local
// Gauss-Kronrod panels, so evaluation stays const and lock-free.
//
// Construction requires enough decay on the horizon (survival(horizon) <=
// floor) as the numeric stand-in for a total cumulative hazard that
// diverges.
class HazardDefinedMarginal final : public MarginalDistribution {
 public:
  explicit HazardDefinedMarginal(std::function<double(double)> hazard_fn,
                                 double horizon = 1e6, int table_size = 4096,
                                 double survival_floor = 1e-5);

  double survival(double x) const override;
  double density(double x) const override;
  double density_derivative(double x) const override;
  double hazard(double x) const override;
  double raw_moment(int k) const override;
  double left_extremity() const override { return left_extremity_; }
  std::string describe() const override;
  double tail_horizon() const override;

  double cumulative_hazard(double x) const;
  double horizon() const { return horizon_; }

 private:
  std::function<double(double)> rate_;
  double horizon_;
  double left_extremity_ = 0.0;
  std::vector<double> xs_;       // table abscissae, xs_[0] = 0
  std::vector<double> cumhaz_;   // cumulative hazard at xs_
};

enum class AgingClass { ifr, dfr, ifra, dfra };

// Grid certificate for an aging class: IFR/DFR through hazard monotonicity,
// IFRA/DFRA through monotonicity of -log(survival(x))/x. The report carries
// the worst adjacent pair.
GridReport aging_class(const MarginalDistribution& d, AgingClass cls,
                       std::span<const double> grid, double tol = 1e-9);

std::string to_string(AgingClass cls);

}  // namespace blm
