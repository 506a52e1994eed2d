#include "blm/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>

namespace blm::num {

namespace {

// Gauss-Kronrod 15(7) abscissae and weights (positive half).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double resk = kWgk[7] * f(c);
  double resg = kWg[3] * f(c);
  for (int i = 0; i < 7; ++i) {
    const double fa = f(c - h * kXgk[i]);
    const double fb = f(c + h * kXgk[i]);
    resk += kWgk[i] * (fa + fb);
    if (i % 2 == 1) resg += kWg[i / 2] * (fa + fb);
  }
  const double value = resk * h;
  const double err = std::abs((resk - resg) * h);
  return {a, b, value, err};
}

}  // namespace

double fixed_gk15(const std::function<double(double)>& f, double a,
                  double b) {
  return gk15(f, a, b).value;
}

IntegralResult integrate(const std::function<double(double)>& f, double a,
                         double b, double abs_tol, double rel_tol,
                         int max_intervals) {
  if (a == b) return {0.0, 0.0, true};
  std::priority_queue<Panel> queue;
  Panel first = gk15(f, a, b);
  double total = first.value;
  double err = first.error;
  queue.push(first);
  int panels = 1;
  while (panels < max_intervals) {
    const double tol = std::max(abs_tol, rel_tol * std::abs(total));
    if (err <= tol) return {total, err, true};
    Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // interval hit floating-point resolution; accept what we have
      queue.push(worst);
      break;
    }
    Panel left = gk15(f, worst.a, mid);
    Panel right = gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++panels;
  }
  const double tol = std::max(abs_tol, rel_tol * std::abs(total));
  return {total, err, err <= tol};
}

double integrate_or_throw(const std::function<double(double)>& f, double a,
                          double b, double abs_tol, double rel_tol,
                          const char* what) {
  IntegralResult r = integrate(f, a, b, abs_tol, rel_tol);
  if (!r.converged) {
    throw std::runtime_error(std::string("quadrature failed to converge: ") +
                             what + " (error estimate " +
                             std::to_string(r.error) + ")");
  }
  return r.value;
}

double solve_monotone(const std::function<double(double)>& f, double target,
                      double lo, double hi, double xtol, int max_iter) {
  if (lo > hi) std::swap(lo, hi);
  double flo = f(lo) - target;
  double fhi = f(hi) - target;
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (flo * fhi > 0.0) {
    throw std::domain_error("solve_monotone: root not bracketed");
  }
  double x = lo, fx = flo;
  for (int it = 0; it < max_iter; ++it) {
    if (hi - lo <= xtol) break;
    // secant proposal, fall back to bisection when it leaves the bracket
    double s = (fhi != flo) ? lo - flo * (hi - lo) / (fhi - flo) : 0.0;
    const double margin = 0.01 * (hi - lo);
    if (!(s > lo + margin && s < hi - margin)) s = 0.5 * (lo + hi);
    x = s;
    fx = f(x) - target;
    if (fx == 0.0) return x;
    if (flo * fx < 0.0) {
      hi = x;
      fhi = fx;
    } else {
      lo = x;
      flo = fx;
    }
  }
  return 0.5 * (lo + hi);
}

double derivative(const std::function<double(double)>& f, double x,
                  double step) {
  auto central = [&](double h) { return (f(x + h) - f(x - h)) / (2.0 * h); };
  const double d1 = central(step);
  const double d2 = central(0.5 * step);
  return (4.0 * d2 - d1) / 3.0;
}

double second_derivative(const std::function<double(double)>& f, double x,
                         double step) {
  auto central = [&](double h) {
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
  };
  const double d1 = central(step);
  const double d2 = central(0.5 * step);
  return (4.0 * d2 - d1) / 3.0;
}

double default_step(double x) { return std::max(1e-5, 1e-5 * std::abs(x)); }

double factorial(int n) {
  if (n < 0) throw std::domain_error("factorial of negative integer");
  double r = 1.0;
  for (int k = 2; k <= n; ++k) {
    r *= k;
    if (r > std::numeric_limits<double>::max() / (k + 1.0)) {
      throw std::overflow_error("factorial overflow at n=" + std::to_string(n));
    }
  }
  return r;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

double regularized_gamma_lower(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::domain_error("regularized_gamma_lower");
  if (x == 0.0) return 0.0;
  const double lg = std::lgamma(a);
  if (x < a + 1.0) {
    // series representation
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < 500; ++n) {
      term *= x / (a + n);
      sum += term;
      if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - lg);
  }
  // continued fraction for Q(a, x), modified Lentz
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  const double q = std::exp(-x + a * std::log(x) - lg) * h;
  return 1.0 - q;
}

double chi_square_cdf(double x, double dof) {
  if (x <= 0.0) return 0.0;
  return regularized_gamma_lower(0.5 * dof, 0.5 * x);
}

double determinant(std::vector<double>& m, int n) {
  double det = 1.0;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(m[r * n + col]) > std::abs(m[pivot * n + col])) pivot = r;
    }
    if (m[pivot * n + col] == 0.0) return 0.0;
    if (pivot != col) {
      for (int c = 0; c < n; ++c) std::swap(m[pivot * n + c], m[col * n + c]);
      det = -det;
    }
    det *= m[col * n + col];
    for (int r = col + 1; r < n; ++r) {
      const double factor = m[r * n + col] / m[col * n + col];
      for (int c = col; c < n; ++c) m[r * n + c] -= factor * m[col * n + c];
    }
  }
  return det;
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 2) throw std::invalid_argument("linspace needs n >= 2");
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

std::vector<double> geomspace(double lo, double hi, int n) {
  if (n < 2) throw std::invalid_argument("geomspace needs n >= 2");
  if (lo <= 0.0 || hi <= lo) throw std::invalid_argument("geomspace bounds");
  std::vector<double> v(n);
  const double ratio = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i) v[i] = lo * std::exp(ratio * i);
  v.front() = lo;
  v.back() = hi;
  return v;
}

}  // namespace blm::num
