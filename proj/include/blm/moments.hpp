#pragma once

#include "blm/blm_core.hpp"

namespace blm {

struct TransformPoint {
  double s;
  double t;
};

struct MomentRequest {
  int i;
  int j;
};

// Joint Laplace-Stieltjes transform E[exp(-sX-tY)], s,t >= 0:
//   [(theta+s) L_X(s) + (theta+t) L_Y(t) - theta] / (theta+s+t).
double lst(const BlmDistribution& d, TransformPoint p);

// Joint mgf E[exp(sX+tY)], valid for s+t < theta and wherever the marginal
// mgfs are finite:
//   [(theta-s) M_X(s) + (theta-t) M_Y(t) - theta] / (theta-s-t).
double mgf(const BlmDistribution& d, TransformPoint p);

// E[X^i Y^j] for positive integer powers, by the double binomial sum over
// marginal moments.
double product_moment(const BlmDistribution& d, MomentRequest m);

// E[XY] = (E[X] + E[Y]) / theta.
double exy(const BlmDistribution& d);

double pearson_correlation(const BlmDistribution& d);

enum class SystemKind { series, parallel };

// Mean time to failure: series (min) is 1/theta, parallel (max) is
// E[X] + E[Y] - 1/theta.
double mttf(const BlmDistribution& d, SystemKind system);

enum class OracleKind { lemma1_lst, lemma2_mgf, lemma3_moment };

// Independent 2-D adaptive-quadrature evaluation of the transform/moment
// identities, used purely as a test oracle against the closed forms:
//   lemma1_lst:    st * II Hbar e^{-sx-ty} dxdy - 1 + L_X(s) + L_Y(t)
//   lemma2_mgf:    st * II Hbar e^{sx+ty} dxdy - 1 + M_X(s) + M_Y(t)
//   lemma3_moment: r*s * II Hbar x^{r-1} y^{s-1} dxdy   (real r, s > 0)
// Truncation starts at [0, 50/theta]^2 and doubles until the value is
// stable; failure to stabilize throws instead of returning silently.
double quadrature_oracle(const BlmDistribution& d, OracleKind kind, double a,
                         double b, double rel_tol = 1e-7);

std::string to_string(SystemKind s);

}  // namespace blm
