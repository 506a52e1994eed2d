#pragma once

#include "blm/blm_core.hpp"

namespace blm {

// Marshall-Olkin rates; lambda() is the total shock rate.
struct MoParams {
  double lambda1;
  double lambda2;
  double lambda12;
  double lambda() const { return lambda1 + lambda2 + lambda12; }
};

// Exponential marginals Exp(lambda1+lambda12), Exp(lambda2+lambda12) with
// theta = lambda; survival exp[-l1*x - l2*y - l12*max(x,y)].
BlmDistribution marshall_olkin(const MoParams& p);

// Absolutely continuous part of the Marshall-Olkin law; marginals are
// negative two-term exponential mixtures, theta = lambda.
BlmDistribution block_basu(double lambda1, double lambda2, double lambda12);

struct FreundParams {
  double alpha;
  double beta;
  double alpha_prime;
  double beta_prime;
};

// Freund's bivariate exponential in the regime alpha+beta >
// max(alpha',beta') where its survival is a two-term mixture per wedge;
// theta = alpha + beta. Outside that regime construction is refused.
BlmDistribution freund(const FreundParams& p);

// Parameter substitution under which the Freund density coincides with the
// Block-Basu density for rates (lambda1, lambda2, lambda12).
FreundParams freund_to_block_basu(double lambda1, double lambda2,
                                  double lambda12);

// Generalized Marshall-Olkin shock model: survival
// Fbar1(x) Fbar2(y) Fbar3(max(x,y)) for independent shock arrivals
// X1 ~ F1, X2 ~ F2, X3 ~ F3. This is not a BLM distribution unless F3 is
// exponential, so it gets its own type.
class GmoDistribution {
 public:
  GmoDistribution(MarginalPtr f1, MarginalPtr f2, MarginalPtr f3);

  double survival(double x, double y) const;
  double margin_x_survival(double x) const;  // Fbar1 * Fbar3
  double margin_y_survival(double y) const;

  const MarginalDistribution& f1() const { return *f1_; }
  const MarginalDistribution& f2() const { return *f2_; }
  const MarginalDistribution& f3() const { return *f3_; }
  const MarginalPtr& f1_ptr() const { return f1_; }
  const MarginalPtr& f2_ptr() const { return f2_; }
  const MarginalPtr& f3_ptr() const { return f3_; }

 private:
  MarginalPtr f1_, f2_, f3_;
};

GmoDistribution generalized_marshall_olkin(MarginalPtr f1, MarginalPtr f2,
                                           MarginalPtr f3);

}  // namespace blm
