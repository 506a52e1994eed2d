#include "blm/dependence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "blm/numeric.hpp"

namespace blm {

namespace {

void check_grid(const Grid& g, std::size_t min_size) {
  if (g.xs.size() < min_size || g.ys.size() < min_size) {
    throw std::invalid_argument("grid too small for the requested check");
  }
  auto increasing = [](const std::vector<double>& v) {
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      if (!(v[i] < v[i + 1])) return false;
    }
    return true;
  };
  if (!increasing(g.xs) || !increasing(g.ys)) {
    throw std::invalid_argument("grid axes must be strictly increasing");
  }
}

// evaluates the kernel over the grid once, propagating failures with the
// offending point
std::vector<double> tabulate(const Kernel& k, const Grid& g) {
  std::vector<double> m(g.xs.size() * g.ys.size());
  for (std::size_t i = 0; i < g.xs.size(); ++i) {
    for (std::size_t j = 0; j < g.ys.size(); ++j) {
      const double v = k.fn(g.xs[i], g.ys[j]);
      if (!std::isfinite(v)) {
        std::ostringstream os;
        os << "kernel '" << k.label << "' evaluation failed at ("
           << g.xs[i] << ", " << g.ys[j] << ")";
        throw std::runtime_error(os.str());
      }
      m[i * g.ys.size() + j] = v;
    }
  }
  return m;
}

// normalized 2x2 minor: det / (row maxima product)
double minor2(const std::vector<double>& m, std::size_t cols, std::size_t i,
              std::size_t k, std::size_t j, std::size_t l) {
  const double a = m[i * cols + j], b = m[i * cols + l];
  const double c = m[k * cols + j], e = m[k * cols + l];
  const double det = a * e - b * c;
  const double scale = std::max(a, b) * std::max(c, e);
  if (scale <= 0.0) return det == 0.0 ? 0.0 : det / 1e-300;
  return det / scale;
}

GridReport two_by_two(const Kernel& k, const Grid& g, double tol,
                      bool reverse_rule) {
  check_grid(g, 2);
  const std::vector<double> m = tabulate(k, g);
  const std::size_t nx = g.xs.size(), ny = g.ys.size();
  GridReport report;
  report.check = std::string(reverse_rule ? "rr2" : "tp2") + "(" + k.label +
                 ")";
  report.worst_value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t kk = i + 1; kk < nx; ++kk) {
      for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t l = j + 1; l < ny; ++l) {
          double margin = minor2(m, ny, i, kk, j, l);
          if (reverse_rule) margin = -margin;
          ++report.configurations_tested;
          if (margin < report.worst_value) {
            report.worst_value = margin;
            report.witness = {g.xs[i], g.xs[kk], g.ys[j], g.ys[l]};
          }
        }
      }
    }
  }
  report.passed = report.worst_value >= -tol;
  return report;
}

}  // namespace

Kernel survival_kernel(const BlmDistribution& d) {
  return {[d](double x, double y) { return d.survival(x, y); },
          "blm_survival"};
}

Kernel density_kernel(const BlmDistribution& d) {
  return {[d](double x, double y) { return d.density(x, y); }, "blm_density"};
}

Kernel cdf_kernel(const BlmDistribution& d) {
  auto fn = [d](double x, double y) {
    const double v = 1.0 - d.margin_x().survival(x) -
                     d.margin_y().survival(y) + d.survival(x, y);
    return std::clamp(v, 0.0, 1.0);
  };
  return {fn, "blm_cdf"};
}

Kernel survival_kernel(const GmoDistribution& d) {
  return {[d](double x, double y) { return d.survival(x, y); },
          "gmo_survival"};
}

Kernel survival_copula_kernel(const BlmDistribution& d) {
  return {[d](double u, double v) { return survival_copula(d, u, v); },
          "blm_survival_copula"};
}

GridReport tp2_check(const Kernel& k, const Grid& g, double tol) {
  return two_by_two(k, g, tol, false);
}

GridReport rr2_check(const Kernel& k, const Grid& g, double tol) {
  return two_by_two(k, g, tol, true);
}

GridReport tp_order_check(const Kernel& k, const Grid& g, int r, double tol,
                          int trials, std::uint64_t seed) {
  if (r < 2) throw std::invalid_argument("tp_order_check requires r >= 2");
  check_grid(g, static_cast<std::size_t>(r));
  const std::vector<double> m = tabulate(k, g);
  const std::size_t nx = g.xs.size(), ny = g.ys.size();

  GridReport report;
  report.check = "tp_order(" + k.label + ", r=" + std::to_string(r) + ")";
  report.worst_value = std::numeric_limits<double>::infinity();

  std::mt19937_64 rng(seed);
  std::vector<double> sub;
  auto consider = [&](const std::vector<std::size_t>& rows,
                      const std::vector<std::size_t>& cols) {
    const std::size_t s = rows.size();
    sub.assign(s * s, 0.0);
    double scale = 1.0;
    for (std::size_t a = 0; a < s; ++a) {
      double row_max = 0.0;
      for (std::size_t b = 0; b < s; ++b) {
        const double v = m[rows[a] * ny + cols[b]];
        sub[a * s + b] = v;
        row_max = std::max(row_max, v);
      }
      scale *= row_max;
    }
    double det = num::determinant(sub, static_cast<int>(s));
    const double margin = (scale > 0.0) ? det / scale
                                        : (det == 0.0 ? 0.0 : det / 1e-300);
    ++report.configurations_tested;
    if (margin < report.worst_value) {
      report.worst_value = margin;
      report.witness.clear();
      for (std::size_t idx : rows) report.witness.push_back(g.xs[idx]);
      for (std::size_t idx : cols) report.witness.push_back(g.ys[idx]);
    }
  };

  auto random_subset = [&](std::size_t n, std::size_t s) {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    std::vector<std::size_t> pick;
    std::sample(all.begin(), all.end(), std::back_inserter(pick), s, rng);
    return pick;  // std::sample keeps ascending order
  };

  for (int s = 2; s <= r; ++s) {
    const auto ss = static_cast<std::size_t>(s);
    // all contiguous windows
    std::vector<std::size_t> rows(ss), cols(ss);
    for (std::size_t i0 = 0; i0 + ss <= nx; ++i0) {
      std::iota(rows.begin(), rows.end(), i0);
      for (std::size_t j0 = 0; j0 + ss <= ny; ++j0) {
        std::iota(cols.begin(), cols.end(), j0);
        consider(rows, cols);
      }
    }
    // random increasing selections
    for (int t = 0; t < trials; ++t) {
      consider(random_subset(nx, ss), random_subset(ny, ss));
    }
  }
  report.passed = report.worst_value >= -tol;
  return report;
}

GridReport theorem6_condition(const BlmDistribution& d, const Grid& g,
                              double tol) {
  check_grid(g, 2);
  const GridReport ifr_f =
      aging_class(d.margin_x(), AgingClass::ifr, g.xs, tol);
  const GridReport ifr_g =
      aging_class(d.margin_y(), AgingClass::ifr, g.ys, tol);

  GridReport product;
  product.worst_value = std::numeric_limits<double>::infinity();
  product.configurations_tested = g.xs.size();
  const double theta = d.theta();
  for (double x : g.xs) {
    const double bound = std::exp(-theta * x);
    const double prod = d.margin_x().survival(x) * d.margin_y().survival(x);
    const double margin = (bound - prod) / bound;
    if (margin < product.worst_value) {
      product.worst_value = margin;
      product.witness = {x};
    }
  }
  product.passed = product.worst_value >= -tol;

  GridReport report;
  report.configurations_tested = ifr_f.configurations_tested +
                                 ifr_g.configurations_tested +
                                 product.configurations_tested;
  const GridReport* worst = &ifr_f;
  const char* label = "F IFR";
  if (ifr_g.worst_value < worst->worst_value) {
    worst = &ifr_g;
    label = "G IFR";
  }
  if (product.worst_value < worst->worst_value) {
    worst = &product;
    label = "FbarGbar <= exp(-theta x)";
  }
  report.check = std::string("theorem6(worst: ") + label + ")";
  report.worst_value = worst->worst_value;
  report.witness = worst->witness;
  report.passed = ifr_f.passed && ifr_g.passed && product.passed;
  return report;
}

namespace {

// second derivatives need a larger step than first derivatives: with h ~
// 1e-5 the rounding term eps*|f|/h^2 dominates at ~1e-6, drowning the
// equality cases of the density characterization
double h_derivative_step(double u) {
  return std::min(std::max(2e-4, 2e-4 * u), 0.25 * u);
}

}  // namespace

GridReport theorem7_density_condition(const BlmDistribution& d,
                                      std::span<const double> grid,
                                      double tol) {
  if (grid.size() < 2) {
    throw std::invalid_argument("theorem7 check needs at least 2 grid points");
  }
  if (std::abs(d.atom_mass()) > 1e-9) {
    throw std::domain_error(
        "theorem7 check requires an absolutely continuous distribution "
        "(atom ~ 0)");
  }
  const double theta = d.theta();
  auto hfun = [&](int which, double u) {
    return which == 0 ? d.h1(u) : d.h2(u);
  };

  const double h10 = d.h1(0.0);
  const double h20 = d.h2(0.0);

  GridReport report;
  report.worst_value = std::numeric_limits<double>::infinity();
  const char* label = "";
  auto offer = [&](double margin, const char* what,
                   std::vector<double> witness) {
    ++report.configurations_tested;
    if (margin < report.worst_value) {
      report.worst_value = margin;
      report.witness = std::move(witness);
      label = what;
    }
  };

  // diagonal compatibility h1(0+) = h2(0+)
  {
    const double scale = std::max({std::abs(h10), std::abs(h20), 1e-300});
    offer(-std::abs(h10 - h20) / scale, "h1(0+)=h2(0+) compatibility",
          {0.0, h10, h20});
  }

  for (int which = 0; which < 2; ++which) {
    for (double u : grid) {
      const double h = hfun(which, u);
      if (!(h > 0.0)) {
        std::ostringstream os;
        os << "theorem7 check: h" << (which + 1) << "(" << u
           << ") is not positive";
        throw std::domain_error(os.str());
      }
      const double step = h_derivative_step(u);
      auto f = [&](double v) { return hfun(which, v); };
      const double hp = num::derivative(f, u, step);
      const double hpp = num::second_derivative(f, u, step);
      // (i) normalized by h^2: this is exactly the local dependence value
      offer((hp * hp - hpp * h) / (h * h),
            which == 0 ? "(i) for h1" : "(i) for h2", {u});
    }
  }
  {
    const double bound_scale = h10 * h10;
    for (double u : grid) {
      const double bound = bound_scale * std::exp(-theta * u);
      const double margin = (bound - d.h1(u) * d.h2(u)) / bound;
      offer(margin, "(ii) h1*h2 <= h1(0+)^2 exp(-theta u)", {u});
    }
  }

  report.check = std::string("theorem7(worst: ") + label + ")";
  report.passed = report.worst_value >= -tol;
  return report;
}

double local_dependence(const BlmDistribution& d, double x, double y) {
  if (!(x > 0.0 && y > 0.0) || x == y) {
    throw std::domain_error(
        "local_dependence requires a positive off-diagonal point");
  }
  const double u = std::abs(x - y);
  auto h = [&](double v) { return x > y ? d.h1(v) : d.h2(v); };
  const double hv = h(u);
  if (!(hv > 0.0)) {
    throw std::domain_error("local_dependence: density not positive here");
  }
  const double step = h_derivative_step(u);
  const double hp = num::derivative(h, u, step);
  const double hpp = num::second_derivative(h, u, step);
  return (hp * hp - hpp * hv) / (hv * hv);
}

double local_dependence(const Kernel& k, double x, double y) {
  auto logk = [&](double a, double b) {
    const double v = k.fn(a, b);
    if (!(v > 0.0)) {
      throw std::domain_error("local_dependence: kernel not positive near (" +
                              std::to_string(x) + ", " + std::to_string(y) +
                              ")");
    }
    return std::log(v);
  };
  const double hx =
      std::min(std::max(2e-4, 2e-4 * std::abs(x)), 0.25 * std::abs(x) + 1e-6);
  const double hy =
      std::min(std::max(2e-4, 2e-4 * std::abs(y)), 0.25 * std::abs(y) + 1e-6);
  auto mixed = [&](double ax, double ay) {
    return (logk(x + ax, y + ay) - logk(x + ax, y - ay) -
            logk(x - ax, y + ay) + logk(x - ax, y - ay)) /
           (4.0 * ax * ay);
  };
  const double d1 = mixed(hx, hy);
  const double d2 = mixed(0.5 * hx, 0.5 * hy);
  return (4.0 * d2 - d1) / 3.0;
}

namespace {

GridReport pqd_impl(const std::function<double(double, double)>& joint,
                    const std::function<double(double)>& fbar,
                    const std::function<double(double)>& gbar, const Grid& g,
                    double tol, const char* label) {
  check_grid(g, 2);
  GridReport report;
  report.check = label;
  report.worst_value = std::numeric_limits<double>::infinity();
  for (double x : g.xs) {
    for (double y : g.ys) {
      const double h = joint(x, y);
      const double prod = fbar(x) * gbar(y);
      const double scale = std::max({h, prod, 1e-300});
      const double margin = (h - prod) / scale;
      ++report.configurations_tested;
      if (margin < report.worst_value) {
        report.worst_value = margin;
        report.witness = {x, y};
      }
    }
  }
  report.passed = report.worst_value >= -tol;
  return report;
}

}  // namespace

GridReport pqd_check(const BlmDistribution& d, const Grid& g, double tol) {
  return pqd_impl(
      [&](double x, double y) { return d.survival(x, y); },
      [&](double x) { return d.margin_x().survival(x); },
      [&](double y) { return d.margin_y().survival(y); }, g, tol,
      "pqd(blm_survival)");
}

GridReport pqd_check(const GmoDistribution& d, const Grid& g, double tol) {
  return pqd_impl(
      [&](double x, double y) { return d.survival(x, y); },
      [&](double x) { return d.margin_x_survival(x); },
      [&](double y) { return d.margin_y_survival(y); }, g, tol,
      "pqd(gmo_survival)");
}

double survival_copula(const BlmDistribution& d, double u, double v) {
  if (!(u > 0.0 && u < 1.0 && v > 0.0 && v < 1.0)) {
    throw std::invalid_argument("survival_copula requires u, v in (0,1)");
  }
  const double x = d.margin_x().survival_inverse(u);
  const double y = d.margin_y().survival_inverse(v);
  return d.survival(x, y);
}

}  // namespace blm
