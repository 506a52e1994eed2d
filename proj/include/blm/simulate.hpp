#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "blm/blm_core.hpp"
#include "blm/families.hpp"

namespace blm {

// Reproducible substream generator: identical (seed, stream) produces a
// bitwise-identical sequence. Each stream is owned by one generation task
// at a time.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);

  double uniform();  // in [0, 1)
  double exponential(double rate);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::uint64_t seed_, stream_;
  std::mt19937_64 engine_;
};

struct SampleBatch {
  std::vector<std::pair<double, double>> pairs;
  std::string sampler_id;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  std::size_t n() const { return pairs.size(); }
};

// Shock-model sampler: (X1 ^ X3, X2 ^ X3) from independent exponentials;
// exact for the Marshall-Olkin law, with ties produced bit-for-bit.
SampleBatch sample_mo(const MoParams& p, std::size_t n, RngStream& rng);

// Generalized shock model by inverse transform of F1, F2, F3.
SampleBatch sample_gmo(const GmoDistribution& d, std::size_t n,
                       RngStream& rng);

// Universal BLM sampler: Z ~ Exp(theta) independent of the difference D,
// whose mixed law (left tail / diagonal atom / right tail) is inverted by
// root finding on the difference-tail functions. Exact for any valid BLM
// law; D = 0 is produced exactly by branch.
SampleBatch sample_blm(const BlmDistribution& d, std::size_t n,
                       RngStream& rng);

struct Estimate {
  double value;
  double std_error;
};

struct SurvivalAt {
  double x, y;
};
struct ProductMomentOf {
  int i, j;
};
struct MttfSeries {};
struct MttfParallel {};
struct AtomFraction {
  double atom_eps = 0.0;  // 0 means exact ties only
};
using Functional = std::variant<SurvivalAt, ProductMomentOf, MttfSeries,
                                MttfParallel, AtomFraction>;

// Sample mean of the functional with plug-in standard error; needs n >= 100.
Estimate estimate(const SampleBatch& batch, const Functional& f);

struct KsResult {
  double statistic;
  double critical;
  bool pass;
};

// One-sample Kolmogorov-Smirnov against a reference cdf, asymptotic
// critical value c(level)/sqrt(n); supported levels 0.01, 0.05, 0.10.
// Requires n >= 100.
KsResult ks_statistic(std::vector<double> samples,
                      const std::function<double(double)>& reference_cdf,
                      double level = 0.01);

// Two-sample KS with critical value c(level) * sqrt((n+m)/(n*m)).
KsResult two_sample_ks(std::vector<double> a, std::vector<double> b,
                       double level = 0.01);

struct ChiSquareResult {
  double statistic;
  double dof;
  double cdf;  // chi-square cdf of the statistic at dof
};

// Pearson independence statistic on quantile bins. Duplicate quantile edges
// (an atom straddling quartiles) collapse, shrinking the table; at least a
// 2x2 table is required.
ChiSquareResult chi_square_independence(std::span<const double> u,
                                        std::span<const double> v,
                                        int bins = 4);

}  // namespace blm
