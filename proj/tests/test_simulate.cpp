#include "blm/simulate.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "blm/numeric.hpp"

using namespace blm;

namespace {

std::vector<double> column(const SampleBatch& b, bool second) {
  std::vector<double> v;
  v.reserve(b.n());
  for (const auto& p : b.pairs) v.push_back(second ? p.second : p.first);
  return v;
}

std::vector<double> mins(const SampleBatch& b) {
  std::vector<double> v;
  v.reserve(b.n());
  for (const auto& p : b.pairs) v.push_back(std::min(p.first, p.second));
  return v;
}

std::vector<double> maxs(const SampleBatch& b) {
  std::vector<double> v;
  v.reserve(b.n());
  for (const auto& p : b.pairs) v.push_back(std::max(p.first, p.second));
  return v;
}

void check_within_3se(const Estimate& e, double truth) {
  CHECK(std::abs(e.value - truth) <= 3.0 * e.std_error);
}

}  // namespace

TEST_CASE("shock sampler hits the MO(1,1,1) functionals") {
  RngStream rng(42);
  const auto batch = sample_mo({1.0, 1.0, 1.0}, 1000000, rng);
  CHECK(batch.sampler_id == "shock_mo");

  check_within_3se(estimate(batch, AtomFraction{}), 1.0 / 3.0);
  check_within_3se(estimate(batch, ProductMomentOf{1, 0}), 0.5);
  check_within_3se(estimate(batch, SurvivalAt{1.0, 1.0}), std::exp(-3.0));
  check_within_3se(estimate(batch, ProductMomentOf{1, 1}), 1.0 / 3.0);
  check_within_3se(estimate(batch, MttfSeries{}), 1.0 / 3.0);
  check_within_3se(estimate(batch, MttfParallel{}), 2.0 / 3.0);
}

TEST_CASE("reproducibility: identical (seed, stream) gives identical draws") {
  RngStream a(99, 7), b(99, 7), c(99, 8);
  const auto ba = sample_mo({1.0, 2.0, 0.5}, 500, a);
  const auto bb = sample_mo({1.0, 2.0, 0.5}, 500, b);
  const auto bc = sample_mo({1.0, 2.0, 0.5}, 500, c);
  CHECK(ba.pairs == bb.pairs);
  CHECK(ba.pairs != bc.pairs);
}

TEST_CASE("gmo sampler with exponential shocks matches the mo sampler") {
  const MoParams p{1.0, 1.0, 1.0};
  const auto gmo = generalized_marshall_olkin(
      std::make_shared<ExponentialMarginal>(p.lambda1),
      std::make_shared<ExponentialMarginal>(p.lambda2),
      std::make_shared<ExponentialMarginal>(p.lambda12));

  RngStream r1(101), r2(202);
  const std::size_t n = 40000;
  const auto shock = sample_mo(p, n, r1);
  const auto general = sample_gmo(gmo, n, r2);

  CHECK(two_sample_ks(column(shock, false), column(general, false)).pass);
  CHECK(two_sample_ks(column(shock, true), column(general, true)).pass);
  CHECK(two_sample_ks(mins(shock), mins(general)).pass);

  // plug-in survival check at (1,1)
  check_within_3se(estimate(general, SurvivalAt{1.0, 1.0}),
                   gmo.survival(1.0, 1.0));

  // tie probability stays consistent across seeds
  std::vector<Estimate> atoms;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    RngStream rs(seed);
    atoms.push_back(
        estimate(sample_gmo(gmo, 20000, rs), AtomFraction{}));
  }
  for (const auto& e : atoms) {
    CHECK(std::abs(e.value - atoms.front().value) <=
          3.0 * (e.std_error + atoms.front().std_error));
  }
}

TEST_CASE("universal sampler agrees in law with the shock sampler") {
  const MoParams p{1.0, 1.0, 1.0};
  const auto d = marshall_olkin(p);
  RngStream r1(7), r2(8);
  const std::size_t n = 100000;
  const auto shock = sample_mo(p, n, r1);
  const auto universal = sample_blm(d, n, r2);
  CHECK(universal.sampler_id == "universal_blm");

  CHECK(two_sample_ks(column(shock, false), column(universal, false)).pass);
  CHECK(two_sample_ks(column(shock, true), column(universal, true)).pass);
  CHECK(two_sample_ks(mins(shock), mins(universal)).pass);
  CHECK(two_sample_ks(maxs(shock), maxs(universal)).pass);

  // the universal sampler produces exact ties for the atom
  check_within_3se(estimate(universal, AtomFraction{}), 1.0 / 3.0);
}

TEST_CASE("universal sampler: min is Exp(theta) and independent of the "
          "difference") {
  const auto bb = block_basu(1.0, 1.0, 1.0);
  RngStream rng(31);
  const std::size_t n = 100000;
  const auto batch = sample_blm(bb, n, rng);

  const ExponentialMarginal z(3.0);
  CHECK(ks_statistic(mins(batch), [&](double x) { return z.cdf(x); }).pass);

  // zero ties for an absolutely continuous law
  CHECK(estimate(batch, AtomFraction{}).value == 0.0);

  // sample correlation between min and difference
  std::vector<double> zs = mins(batch), ds;
  ds.reserve(n);
  for (const auto& pr : batch.pairs) ds.push_back(pr.first - pr.second);
  double mz = 0.0, md = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mz += zs[i];
    md += ds[i];
  }
  mz /= n;
  md /= n;
  double szz = 0.0, sdd = 0.0, szd = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    szz += (zs[i] - mz) * (zs[i] - mz);
    sdd += (ds[i] - md) * (ds[i] - md);
    szd += (zs[i] - mz) * (ds[i] - md);
  }
  const double corr = szd / std::sqrt(szz * sdd);
  CHECK(std::abs(corr) <= 3.0 / std::sqrt(static_cast<double>(n)));

  // quartile-binned chi-square independence stays under the 0.999 quantile
  const auto chi = chi_square_independence(zs, ds);
  CHECK(chi.cdf < 0.999);
}

TEST_CASE("universal sampler matches the closed-form survival pointwise") {
  std::vector<BlmDistribution> corpus;
  corpus.push_back(marshall_olkin({1.0, 2.0, 3.0}));
  corpus.push_back(block_basu(1.0, 1.0, 1.0));
  corpus.push_back(freund({1.5, 1.5, 2.0, 2.0}));
  corpus.push_back(from_hazards([](double x) { return 1.0 / (1.0 + x); },
                                [](double x) { return 1.0 / (1.0 + x); },
                                2.0));
  corpus.push_back(from_hazards(
      [](double x) { return 2.0 - 1.0 / (1.0 + x); },
      [](double x) { return 2.0 - 1.0 / (1.0 + x); }, 2.0,
      ValidationMode::strict, 1e3));

  std::uint64_t seed = 8000;
  for (const auto& d : corpus) {
    RngStream rng(seed++);
    const auto batch = sample_blm(d, 20000, rng);
    const Grid g = default_grid(d.theta(), 5);
    for (double x : g.xs) {
      for (double y : g.ys) {
        const auto est = estimate(batch, SurvivalAt{x, y});
        const double truth = d.survival(x, y);
        CHECK(std::abs(est.value - truth) <=
              3.0 * est.std_error + 1e-12);
      }
    }
  }
}

TEST_CASE("universal sampler handles the purely singular law") {
  // f(0) = g(0) = theta puts all the mass on the diagonal: X = Y ~ Exp(3)
  const auto sing = make_blm(std::make_shared<ExponentialMarginal>(3.0),
                             std::make_shared<ExponentialMarginal>(3.0), 3.0);
  REQUIRE(sing.atom_mass() == doctest::Approx(1.0));
  RngStream rng(64);
  const auto batch = sample_blm(sing, 50000, rng);
  CHECK(estimate(batch, AtomFraction{}).value == 1.0);

  // MC check of the joint transform E[e^{-X-Y}] = theta/(theta+2) = 3/5
  double acc = 0.0, acc2 = 0.0;
  for (const auto& p : batch.pairs) {
    const double v = std::exp(-p.first - p.second);
    acc += v;
    acc2 += v * v;
  }
  const double n = static_cast<double>(batch.n());
  const double mean = acc / n;
  const double se = std::sqrt((acc2 / n - mean * mean) / (n - 1.0));
  CHECK(std::abs(mean - 0.6) <= 3.0 * se);
}

TEST_CASE("atom fraction tracks the closed form across MO draws") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> rate(0.4, 2.0);
  for (int rep = 0; rep < 3; ++rep) {
    const MoParams p{rate(gen), rate(gen), rate(gen)};
    RngStream rng(600 + rep);
    const auto batch = sample_mo(p, 60000, rng);
    check_within_3se(estimate(batch, AtomFraction{}),
                     p.lambda12 / p.lambda());
  }
}

TEST_CASE("ks statistic: null passes, gross mismatch fails") {
  RngStream rng(15);
  std::vector<double> draws;
  for (int i = 0; i < 10000; ++i) draws.push_back(rng.exponential(3.0));
  const ExponentialMarginal e3(3.0);
  CHECK(ks_statistic(draws, [&](double x) { return e3.cdf(x); }).pass);

  const ExponentialMarginal e2(2.0);
  std::vector<double> wrong;
  for (int i = 0; i < 10000; ++i) wrong.push_back(rng.exponential(1.0));
  const auto res = ks_statistic(wrong, [&](double x) { return e2.cdf(x); });
  CHECK_FALSE(res.pass);

  CHECK_THROWS_AS(ks_statistic({1.0, 2.0}, [](double) { return 0.5; }),
                  std::invalid_argument);
}

TEST_CASE("chi-square independence helper") {
  RngStream rng(77);
  std::vector<double> u, v, w;
  for (int i = 0; i < 20000; ++i) {
    u.push_back(rng.uniform());
    v.push_back(rng.uniform());
    w.push_back(u.back());  // perfectly dependent copy
  }
  CHECK(chi_square_independence(u, v).cdf < 0.999);
  CHECK(chi_square_independence(u, w).cdf > 0.999);
  CHECK(chi_square_independence(u, w).dof == doctest::Approx(9.0));
}

TEST_CASE("estimate requires a reasonable batch") {
  RngStream rng(1);
  const auto tiny = sample_mo({1.0, 1.0, 1.0}, 50, rng);
  CHECK_THROWS_AS(estimate(tiny, MttfSeries{}), std::invalid_argument);
  CHECK_THROWS_AS(sample_mo({1.0, 1.0, 1.0}, 0, rng), std::invalid_argument);
}
