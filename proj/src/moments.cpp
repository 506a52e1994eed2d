#include "blm/moments.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "blm/numeric.hpp"

namespace blm {

double lst(const BlmDistribution& d, TransformPoint p) {
  if (!(p.s >= 0.0 && p.t >= 0.0)) {
    throw std::invalid_argument("lst requires s, t >= 0");
  }
  const double theta = d.theta();
  const double lx = d.margin_x().lst(p.s);
  const double ly = d.margin_y().lst(p.t);
  return ((theta + p.s) * lx + (theta + p.t) * ly - theta) /
         (theta + p.s + p.t);
}

double mgf(const BlmDistribution& d, TransformPoint p) {
  const double theta = d.theta();
  if (!(p.s + p.t < theta)) {
    throw std::domain_error("mgf requires s + t < theta");
  }
  const double mx = d.margin_x().mgf(p.s);
  const double my = d.margin_y().mgf(p.t);
  return ((theta - p.s) * mx + (theta - p.t) * my - theta) /
         (theta - p.s - p.t);
}

double product_moment(const BlmDistribution& d, MomentRequest m) {
  if (m.i < 1 || m.j < 1) {
    throw std::invalid_argument("product_moment requires i, j >= 1");
  }
  const double theta = d.theta();
  auto half = [&](int i, int j, const MarginalDistribution& margin) {
    double sum = 0.0;
    for (int k = 0; k <= i - 1; ++k) {
      sum += (1.0 / (i - k)) * num::binomial(i - 1, k) *
             num::factorial(j + k - 1) / std::pow(theta, j + k) *
             margin.raw_moment(i - k);
    }
    return sum;
  };
  return m.i * m.j *
         (half(m.i, m.j, d.margin_x()) + half(m.j, m.i, d.margin_y()));
}

double exy(const BlmDistribution& d) {
  return (d.margin_x().raw_moment(1) + d.margin_y().raw_moment(1)) /
         d.theta();
}

double pearson_correlation(const BlmDistribution& d) {
  const double ex = d.margin_x().raw_moment(1);
  const double ey = d.margin_y().raw_moment(1);
  const double vx = d.margin_x().raw_moment(2) - ex * ex;
  const double vy = d.margin_y().raw_moment(2) - ey * ey;
  if (!(vx > 1e-300 && vy > 1e-300)) {
    throw std::domain_error("pearson_correlation requires positive variances");
  }
  return (exy(d) - ex * ey) / std::sqrt(vx * vy);
}

double mttf(const BlmDistribution& d, SystemKind system) {
  if (system == SystemKind::series) return 1.0 / d.theta();
  return d.margin_x().raw_moment(1) + d.margin_y().raw_moment(1) -
         1.0 / d.theta();
}

std::string to_string(SystemKind s) {
  return s == SystemKind::series ? "series" : "parallel";
}

namespace {

// II_{[0,T]^2} Hbar(x,y) w(x,y) dxdy with the inner integral split at the
// diagonal kink of Hbar.
double square_integral(const BlmDistribution& d,
                       const std::function<double(double, double)>& weight,
                       double horizon, double inner_tol, double outer_tol) {
  auto outer = [&](double y) {
    auto fx = [&](double x) { return d.survival(x, y) * weight(x, y); };
    double v = num::integrate(fx, 0.0, y, inner_tol, 1e-10).value;
    v += num::integrate(fx, y, horizon, inner_tol, 1e-10).value;
    return v;
  };
  return num::integrate_or_throw(outer, 0.0, horizon, outer_tol, 1e-9,
                                 "2-D transform/moment oracle");
}

}  // namespace

double quadrature_oracle(const BlmDistribution& d, OracleKind kind, double a,
                         double b, double rel_tol) {
  const double theta = d.theta();
  std::function<double(double, double)> weight;
  double outside = 0.0;  // the identity's terms outside the double integral
  double factor = 1.0;
  switch (kind) {
    case OracleKind::lemma1_lst: {
      if (!(a >= 0.0 && b >= 0.0)) {
        throw std::invalid_argument("lemma1 oracle requires s, t >= 0");
      }
      weight = [a, b](double x, double y) {
        return std::exp(-a * x - b * y);
      };
      outside = -1.0 + d.margin_x().lst(a) + d.margin_y().lst(b);
      factor = a * b;
      break;
    }
    case OracleKind::lemma2_mgf: {
      if (!(a + b < theta)) {
        throw std::domain_error("lemma2 oracle requires s + t < theta");
      }
      weight = [a, b](double x, double y) { return std::exp(a * x + b * y); };
      outside = -1.0 + d.margin_x().mgf(a) + d.margin_y().mgf(b);
      factor = a * b;
      break;
    }
    case OracleKind::lemma3_moment: {
      if (!(a > 0.0 && b > 0.0)) {
        throw std::invalid_argument("lemma3 oracle requires r, s > 0");
      }
      weight = [a, b](double x, double y) {
        return std::pow(x, a - 1.0) * std::pow(y, b - 1.0);
      };
      outside = 0.0;
      factor = a * b;
      break;
    }
  }
  if (factor == 0.0) return outside;

  // double the horizon until the integral stabilizes
  double horizon = 50.0 / theta;
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (int round = 0; round < 8; ++round) {
    const double integral =
        square_integral(d, weight, horizon, 1e-13, 1e-12);
    const double value = factor * integral + outside;
    if (round > 0) {
      const double tol =
          std::max(0.25 * rel_tol * std::abs(value), 1e-13);
      if (std::abs(value - prev) <= tol) return value;
    }
    prev = value;
    horizon *= 2.0;
  }
  std::ostringstream os;
  os << "quadrature oracle failed to stabilize (kind="
     << static_cast<int>(kind) << ", args=" << a << "," << b << ")";
  throw std::runtime_error(os.str());
}

}  // namespace blm
