#include "blm/orders.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "blm/moments.hpp"
#include "blm/numeric.hpp"

namespace blm {

namespace {

constexpr double kTieTol = 1e-12;

Holds classify(double worst, double tol) {
  if (worst >= -kTieTol) return Holds::yes;
  if (worst >= -tol) return Holds::inconclusive;
  return Holds::no;
}

struct WorstTracker {
  double worst = std::numeric_limits<double>::infinity();
  std::vector<double> witness;
  std::size_t count = 0;

  void offer(double margin, std::initializer_list<double> point) {
    ++count;
    if (margin < worst) {
      worst = margin;
      witness = point;
    }
  }
};

double rel_diff(double later, double earlier) {
  const double scale =
      std::max({std::abs(later), std::abs(earlier), 1e-300});
  return (later - earlier) / scale;
}

}  // namespace

std::string to_string(Relation r) {
  switch (r) {
    case Relation::st: return "st";
    case Relation::hr: return "hr";
    case Relation::rh: return "rh";
    case Relation::lr: return "lr";
    case Relation::uo: return "uo";
    case Relation::concordance: return "concordance";
    case Relation::lt: return "lt";
    case Relation::ifra: return "ifra";
    case Relation::dfra: return "dfra";
  }
  return "?";
}

std::string to_string(Holds h) {
  switch (h) {
    case Holds::yes: return "yes";
    case Holds::no: return "no";
    case Holds::inconclusive: return "inconclusive";
  }
  return "?";
}

OrderVerdict univariate_order(const MarginalDistribution& a,
                              const MarginalDistribution& b, Relation rel,
                              std::span<const double> grid, double tol) {
  if (grid.size() < 2) {
    throw std::invalid_argument("univariate_order needs >= 2 grid points");
  }
  OrderVerdict v;
  v.relation = rel;
  WorstTracker tracker;
  std::size_t skipped = 0;

  if (rel == Relation::st) {
    for (double x : grid) {
      const double sa = a.survival(x);
      const double sb = b.survival(x);
      tracker.offer((sb - sa) / std::max({sa, sb, 1e-300}), {x});
    }
  } else if (rel == Relation::hr || rel == Relation::rh ||
             rel == Relation::lr) {
    auto value = [&](const MarginalDistribution& m, double x) {
      switch (rel) {
        case Relation::hr: return m.survival(x);
        case Relation::rh: return m.cdf(x);
        default: return m.density(x);
      }
    };
    bool have_prev = false;
    double prev_ratio = 0.0, prev_x = 0.0;
    for (double x : grid) {
      const double den = value(a, x);
      if (den <= 0.0) {
        ++skipped;
        continue;
      }
      const double ratio = value(b, x) / den;
      if (have_prev) tracker.offer(rel_diff(ratio, prev_ratio), {prev_x, x});
      have_prev = true;
      prev_ratio = ratio;
      prev_x = x;
    }
    if (tracker.count == 0) {
      v.holds = Holds::inconclusive;
      v.note = "all grid points skipped (vanishing denominator)";
      return v;
    }
  } else {
    throw std::invalid_argument(
        "univariate_order supports st, hr, rh, lr only");
  }

  v.margin = tracker.worst;
  v.witness = tracker.witness;
  v.points_checked = tracker.count;
  v.holds = classify(tracker.worst, tol);
  if (skipped > 0) {
    v.note = std::to_string(skipped) + " grid points skipped";
  }
  return v;
}

std::vector<OrderVerdict> theorem5_marginal_dominance(
    const BlmDistribution& d, std::span<const double> grid, double tol) {
  const ExponentialMarginal z(d.theta());
  return {univariate_order(z, d.margin_x(), Relation::lr, grid, tol),
          univariate_order(z, d.margin_y(), Relation::lr, grid, tol)};
}

OrderVerdict bivariate_ifra_check(const BlmDistribution& d,
                                  std::span<const double> alphas,
                                  const Grid& g, Relation direction,
                                  double tol) {
  if (direction != Relation::ifra && direction != Relation::dfra) {
    throw std::invalid_argument("direction must be ifra or dfra");
  }
  if (alphas.empty()) throw std::invalid_argument("alphas must be nonempty");
  for (double a : alphas) {
    if (!(a > 0.0 && a < 1.0)) {
      throw std::invalid_argument("alphas must lie in (0,1)");
    }
  }
  const bool ifra = (direction == Relation::ifra);
  OrderVerdict v;
  v.relation = direction;
  WorstTracker tracker;
  for (double a : alphas) {
    for (double x : g.xs) {
      for (double y : g.ys) {
        const double powered = std::pow(d.survival(x, y), a);
        const double scaled = d.survival(a * x, a * y);
        const double diff = ifra ? scaled - powered : powered - scaled;
        tracker.offer(diff / std::max({powered, scaled, 1e-300}), {a, x, y});
      }
    }
  }
  v.margin = tracker.worst;
  v.witness = tracker.witness;
  v.points_checked = tracker.count;
  v.holds = classify(tracker.worst, tol);

  // the bivariate property holds iff both marginals have it; a grid
  // disagreement between the two certificates is numerical noise, not a
  // theorem violation
  const AgingClass cls = ifra ? AgingClass::ifra : AgingClass::dfra;
  const bool marginals_pass =
      aging_class(d.margin_x(), cls, g.xs, tol).passed &&
      aging_class(d.margin_y(), cls, g.ys, tol).passed;
  const bool bivariate_pass = (v.holds == Holds::yes);
  if (v.holds != Holds::inconclusive && marginals_pass != bivariate_pass) {
    v.holds = Holds::inconclusive;
    v.note = "grid verdict disagrees with the marginal certificates";
  }
  return v;
}

namespace {

void require_equal_margins(const BlmDistribution& d1,
                           const BlmDistribution& d2, const Grid& g,
                           const char* who) {
  for (double x : g.xs) {
    if (std::abs(d1.margin_x().survival(x) - d2.margin_x().survival(x)) >
        1e-9) {
      throw std::invalid_argument(std::string(who) +
                                  " requires matching X margins");
    }
  }
  for (double y : g.ys) {
    if (std::abs(d1.margin_y().survival(y) - d2.margin_y().survival(y)) >
        1e-9) {
      throw std::invalid_argument(std::string(who) +
                                  " requires matching Y margins");
    }
  }
}

WorstTracker upper_orthant(const BlmDistribution& d1,
                           const BlmDistribution& d2, const Grid& g) {
  WorstTracker tracker;
  for (double x : g.xs) {
    for (double y : g.ys) {
      const double h1 = d1.survival(x, y);
      const double h2 = d2.survival(x, y);
      tracker.offer((h2 - h1) / std::max({h1, h2, 1e-300}), {x, y});
    }
  }
  return tracker;
}

}  // namespace

OrderVerdict compare_blm(const BlmDistribution& d1, const BlmDistribution& d2,
                         Relation rel, const Grid& g, double tol) {
  OrderVerdict v;
  v.relation = rel;
  if (rel == Relation::uo || rel == Relation::concordance) {
    if (rel == Relation::concordance) {
      require_equal_margins(d1, d2, g, "concordance order");
    }
    WorstTracker tracker = upper_orthant(d1, d2, g);
    v.margin = tracker.worst;
    v.witness = tracker.witness;
    v.points_checked = tracker.count;
    v.holds = classify(tracker.worst, tol);
    return v;
  }
  if (rel == Relation::lt) {
    // Laplace-transform order: L1 >= L2 on a log-spaced transform grid
    const double theta = std::max(d1.theta(), d2.theta());
    const std::vector<double> pts = num::geomspace(1e-3, 10.0 * theta, 8);
    WorstTracker tracker;
    for (double s : pts) {
      for (double t : pts) {
        const double l1 = lst(d1, {s, t});
        const double l2 = lst(d2, {s, t});
        tracker.offer((l1 - l2) / std::max({l1, l2, 1e-300}), {s, t});
      }
    }
    v.margin = tracker.worst;
    v.witness = tracker.witness;
    v.points_checked = tracker.count;
    v.holds = classify(tracker.worst, tol);
    return v;
  }
  throw std::invalid_argument("compare_blm supports uo, concordance, lt");
}

OrderVerdict slepian_check(const BlmDistribution& d1,
                           const BlmDistribution& d2, const Grid& g,
                           double tol) {
  require_equal_margins(d1, d2, g, "slepian_check");
  const double rho1 = pearson_correlation(d1);
  const double rho2 = pearson_correlation(d2);

  const WorstTracker t12 = upper_orthant(d1, d2, g);
  const WorstTracker t21 = upper_orthant(d2, d1, g);
  const bool h1_below = t12.worst >= -kTieTol;
  const bool h2_below = t21.worst >= -kTieTol;

  OrderVerdict v;
  v.relation = Relation::uo;
  v.points_checked = t12.count;
  std::ostringstream note;
  note << "rho1=" << rho1 << " rho2=" << rho2;
  v.note = note.str();

  const double drho = rho2 - rho1;
  if (std::abs(drho) <= tol) {
    // equal correlations: the iff forces equal survival functions
    const double worst = std::min(t12.worst, t21.worst);
    v.margin = worst;
    v.witness = worst == t12.worst ? t12.witness : t21.witness;
    v.holds = classify(worst, tol);
    return v;
  }
  const WorstTracker& expected = (drho > 0.0) ? t12 : t21;
  v.margin = expected.worst;
  v.witness = expected.witness;
  if (drho > 0.0) {
    v.holds = h1_below ? Holds::yes
                       : (t12.worst >= -tol ? Holds::inconclusive
                                            : Holds::no);
  } else {
    v.holds = h2_below ? Holds::yes
                       : (t21.worst >= -tol ? Holds::inconclusive
                                            : Holds::no);
  }
  return v;
}

}  // namespace blm
