#include "blm/families.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace blm {

namespace {

void require_positive(double v, const char* name) {
  if (!(std::isfinite(v) && v > 0.0)) {
    throw std::invalid_argument(std::string(name) + " must be positive");
  }
}

}  // namespace

BlmDistribution marshall_olkin(const MoParams& p) {
  require_positive(p.lambda1, "lambda1");
  require_positive(p.lambda2, "lambda2");
  require_positive(p.lambda12, "lambda12");
  auto f = std::make_shared<ExponentialMarginal>(p.lambda1 + p.lambda12);
  auto g = std::make_shared<ExponentialMarginal>(p.lambda2 + p.lambda12);
  return make_blm(std::move(f), std::move(g), p.lambda());
}

BlmDistribution block_basu(double lambda1, double lambda2, double lambda12) {
  require_positive(lambda1, "lambda1");
  require_positive(lambda2, "lambda2");
  require_positive(lambda12, "lambda12");
  const double lambda = lambda1 + lambda2 + lambda12;
  const double pair_sum = lambda1 + lambda2;
  auto mixture = [&](double own_rate) {
    return std::make_shared<SignedExponentialMixture>(
        std::vector<SignedExponentialMixture::Term>{
            {lambda / pair_sum, own_rate + lambda12},
            {-lambda12 / pair_sum, lambda}});
  };
  return make_blm(mixture(lambda1), mixture(lambda2), lambda);
}

BlmDistribution freund(const FreundParams& p) {
  require_positive(p.alpha, "alpha");
  require_positive(p.beta, "beta");
  require_positive(p.alpha_prime, "alpha_prime");
  require_positive(p.beta_prime, "beta_prime");
  const double theta = p.alpha + p.beta;
  if (!(theta > std::max(p.alpha_prime, p.beta_prime))) {
    throw std::domain_error(
        "freund: unsupported regime, requires alpha+beta > "
        "max(alpha_prime, beta_prime)");
  }
  // marginal survivals read off the wedge survival at y=0 (resp. x=0):
  //   Fbar(x) = b/(a+b-a') e^{-a'x} + (a-a')/(a+b-a') e^{-(a+b)x}
  auto mixture = [theta](double partner, double own_prime) {
    const double denom = theta - own_prime;
    std::vector<SignedExponentialMixture::Term> terms{
        {partner / denom, own_prime},
        {(theta - partner - own_prime) / denom, theta}};
    return std::make_shared<SignedExponentialMixture>(std::move(terms));
  };
  return make_blm(mixture(p.beta, p.alpha_prime),
                  mixture(p.alpha, p.beta_prime), theta);
}

FreundParams freund_to_block_basu(double lambda1, double lambda2,
                                  double lambda12) {
  require_positive(lambda1, "lambda1");
  require_positive(lambda2, "lambda2");
  require_positive(lambda12, "lambda12");
  const double lambda = lambda1 + lambda2 + lambda12;
  const double pair_sum = lambda1 + lambda2;
  return FreundParams{lambda1 * lambda / pair_sum,
                      lambda2 * lambda / pair_sum, lambda1 + lambda12,
                      lambda2 + lambda12};
}

GmoDistribution::GmoDistribution(MarginalPtr f1, MarginalPtr f2,
                                 MarginalPtr f3)
    : f1_(std::move(f1)), f2_(std::move(f2)), f3_(std::move(f3)) {
  if (!f1_ || !f2_ || !f3_) {
    throw std::invalid_argument("gmo requires three marginals");
  }
}

double GmoDistribution::survival(double x, double y) const {
  x = std::max(x, 0.0);
  y = std::max(y, 0.0);
  const double v =
      f1_->survival(x) * f2_->survival(y) * f3_->survival(std::max(x, y));
  return std::clamp(v, 0.0, 1.0);
}

double GmoDistribution::margin_x_survival(double x) const {
  return f1_->survival(x) * f3_->survival(x);
}

double GmoDistribution::margin_y_survival(double y) const {
  return f2_->survival(y) * f3_->survival(y);
}

GmoDistribution generalized_marshall_olkin(MarginalPtr f1, MarginalPtr f2,
                                           MarginalPtr f3) {
  return GmoDistribution(std::move(f1), std::move(f2), std::move(f3));
}

}  // namespace blm
