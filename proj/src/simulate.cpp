#include "blm/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "blm/numeric.hpp"

namespace blm {

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream & 0xffffffffu),
                    static_cast<std::uint32_t>(stream >> 32),
                    std::uint32_t{0x9e3779b9}};
  engine_.seed(seq);
}

double RngStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::exponential(double rate) {
  return -std::log1p(-uniform()) / rate;
}

SampleBatch sample_mo(const MoParams& p, std::size_t n, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_mo requires n >= 1");
  SampleBatch batch;
  batch.sampler_id = "shock_mo";
  batch.seed = rng.seed();
  batch.stream = rng.stream();
  batch.pairs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x1 = rng.exponential(p.lambda1);
    const double x2 = rng.exponential(p.lambda2);
    const double x3 = rng.exponential(p.lambda12);
    batch.pairs.emplace_back(std::min(x1, x3), std::min(x2, x3));
  }
  return batch;
}

SampleBatch sample_gmo(const GmoDistribution& d, std::size_t n,
                       RngStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_gmo requires n >= 1");
  SampleBatch batch;
  batch.sampler_id = "shock_gmo";
  batch.seed = rng.seed();
  batch.stream = rng.stream();
  batch.pairs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x1 = d.f1().quantile(rng.uniform());
    const double x2 = d.f2().quantile(rng.uniform());
    const double x3 = d.f3().quantile(rng.uniform());
    batch.pairs.emplace_back(std::min(x1, x3), std::min(x2, x3));
  }
  return batch;
}

namespace {

// inverts a nonincreasing tail function on [0, inf); target in (0, tail(0)]
double invert_tail(const std::function<double(double)>& tail, double target,
                   double hint, double offending_u) {
  if (target >= tail(0.0)) return 0.0;
  double hi = std::max(hint, 1e-12);
  int expansions = 0;
  while (tail(hi) > target) {
    hi *= 2.0;
    if (++expansions > 120) {
      std::ostringstream os;
      os << "universal sampler: tail inversion bracket failed (u="
         << offending_u << ")";
      throw std::runtime_error(os.str());
    }
  }
  return num::solve_monotone(tail, target, 0.0, hi, 1e-12);
}

}  // namespace

SampleBatch sample_blm(const BlmDistribution& d, std::size_t n,
                       RngStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_blm requires n >= 1");
  const double theta = d.theta();
  const double p_atom = std::clamp(d.atom_mass(), 0.0, 1.0);
  const double p_neg = d.diff_tail(0.0, Side::y_minus_x);
  const double hint = 1.0 / theta;

  auto neg_tail = [&d](double t) { return d.diff_tail(t, Side::y_minus_x); };
  auto pos_tail = [&d](double t) { return d.diff_tail(t, Side::x_minus_y); };

  SampleBatch batch;
  batch.sampler_id = "universal_blm";
  batch.seed = rng.seed();
  batch.stream = rng.stream();
  batch.pairs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double z = rng.exponential(theta);
    const double u = rng.uniform();
    double diff = 0.0;
    if (u < p_neg) {
      diff = -invert_tail(neg_tail, u, hint, u);
    } else if (u >= p_neg + p_atom) {
      diff = invert_tail(pos_tail, 1.0 - u, hint, u);
    }
    batch.pairs.emplace_back(z + std::max(diff, 0.0),
                             z + std::max(-diff, 0.0));
  }
  return batch;
}

Estimate estimate(const SampleBatch& batch, const Functional& f) {
  if (batch.n() < 100) {
    throw std::invalid_argument("estimate requires n >= 100");
  }
  auto value_of = [&f](const std::pair<double, double>& p) -> double {
    return std::visit(
        [&p](const auto& spec) -> double {
          using T = std::decay_t<decltype(spec)>;
          if constexpr (std::is_same_v<T, SurvivalAt>) {
            return (p.first > spec.x && p.second > spec.y) ? 1.0 : 0.0;
          } else if constexpr (std::is_same_v<T, ProductMomentOf>) {
            return std::pow(p.first, spec.i) * std::pow(p.second, spec.j);
          } else if constexpr (std::is_same_v<T, MttfSeries>) {
            return std::min(p.first, p.second);
          } else if constexpr (std::is_same_v<T, MttfParallel>) {
            return std::max(p.first, p.second);
          } else {
            return std::abs(p.first - p.second) <= spec.atom_eps ? 1.0 : 0.0;
          }
        },
        f);
  };
  const double n = static_cast<double>(batch.n());
  double mean = 0.0;
  for (const auto& p : batch.pairs) mean += value_of(p);
  mean /= n;
  double ss = 0.0;
  for (const auto& p : batch.pairs) {
    const double dv = value_of(p) - mean;
    ss += dv * dv;
  }
  return {mean, std::sqrt(ss / (n * (n - 1.0)))};
}

namespace {

double ks_critical_constant(double level) {
  if (level == 0.01) return 1.628;
  if (level == 0.05) return 1.358;
  if (level == 0.10) return 1.224;
  throw std::invalid_argument("unsupported KS level (use 0.01, 0.05, 0.10)");
}

}  // namespace

KsResult ks_statistic(std::vector<double> samples,
                      const std::function<double(double)>& reference_cdf,
                      double level) {
  if (samples.size() < 100) {
    throw std::invalid_argument("ks_statistic requires n >= 100");
  }
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double stat = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = reference_cdf(samples[i]);
    stat = std::max(stat, (i + 1) / n - f);
    stat = std::max(stat, f - i / n);
  }
  const double critical = ks_critical_constant(level) / std::sqrt(n);
  return {stat, critical, stat < critical};
}

KsResult two_sample_ks(std::vector<double> a, std::vector<double> b,
                       double level) {
  if (a.size() < 100 || b.size() < 100) {
    throw std::invalid_argument("two_sample_ks requires n, m >= 100");
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double stat = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j]) {
      ++i;
    } else {
      ++j;
    }
    stat = std::max(stat, std::abs(i / na - j / nb));
  }
  const double critical =
      ks_critical_constant(level) * std::sqrt((na + nb) / (na * nb));
  return {stat, critical, stat < critical};
}

ChiSquareResult chi_square_independence(std::span<const double> u,
                                        std::span<const double> v, int bins) {
  if (u.size() != v.size()) {
    throw std::invalid_argument("chi_square_independence: size mismatch");
  }
  if (u.size() < 100) {
    throw std::invalid_argument("chi_square_independence requires n >= 100");
  }
  if (bins < 2) throw std::invalid_argument("need at least 2 bins");

  auto edges_of = [bins](std::span<const double> data) {
    std::vector<double> sorted(data.begin(), data.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> edges;
    for (int k = 1; k < bins; ++k) {
      const std::size_t idx = (sorted.size() * k) / bins;
      const double e = sorted[std::min(idx, sorted.size() - 1)];
      if (edges.empty() || e > edges.back()) edges.push_back(e);
    }
    return edges;  // bin count = edges.size() + 1
  };
  auto bin_of = [](const std::vector<double>& edges, double x) {
    return static_cast<std::size_t>(
        std::lower_bound(edges.begin(), edges.end(), x) - edges.begin());
  };

  const std::vector<double> ue = edges_of(u);
  const std::vector<double> ve = edges_of(v);
  const std::size_t rows = ue.size() + 1;
  const std::size_t cols = ve.size() + 1;
  if (rows < 2 || cols < 2) {
    throw std::invalid_argument(
        "chi_square_independence: degenerate binning (constant sample?)");
  }

  std::vector<double> counts(rows * cols, 0.0);
  std::vector<double> row_sum(rows, 0.0), col_sum(cols, 0.0);
  for (std::size_t k = 0; k < u.size(); ++k) {
    const std::size_t r = bin_of(ue, u[k]);
    const std::size_t c = bin_of(ve, v[k]);
    counts[r * cols + c] += 1.0;
    row_sum[r] += 1.0;
    col_sum[c] += 1.0;
  }
  const double n = static_cast<double>(u.size());
  double stat = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double expected = row_sum[r] * col_sum[c] / n;
      if (expected > 0.0) {
        const double diff = counts[r * cols + c] - expected;
        stat += diff * diff / expected;
      }
    }
  }
  const double dof = static_cast<double>((rows - 1) * (cols - 1));
  return {stat, dof, num::chi_square_cdf(stat, dof)};
}

}  // namespace blm
