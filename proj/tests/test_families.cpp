#include "blm/families.hpp"

#include <array>
#include <cmath>
#include <memory>
#include <random>
#include <stdexcept>

#include <doctest.h>

using namespace blm;

namespace {

double mo_survival_direct(double l1, double l2, double l12, double x,
                          double y) {
  return std::exp(-l1 * x - l2 * y - l12 * std::max(x, y));
}

double bb_survival_direct(double l1, double l2, double l12, double x,
                          double y) {
  const double lambda = l1 + l2 + l12;
  const double m = std::max(x, y);
  return lambda / (l1 + l2) * std::exp(-l1 * x - l2 * y - l12 * m) -
         l12 / (l1 + l2) * std::exp(-lambda * m);
}

}  // namespace

TEST_CASE("marshall_olkin: margins, theta, survival") {
  const auto d = marshall_olkin({1.0, 2.0, 3.0});
  CHECK(d.theta() == doctest::Approx(6.0));
  CHECK(d.margin_x().survival(1.0) ==
        doctest::Approx(std::exp(-4.0)).epsilon(1e-14));
  CHECK(d.margin_y().survival(1.0) ==
        doctest::Approx(std::exp(-5.0)).epsilon(1e-14));
  CHECK(d.survival(1.0, 2.0) ==
        doctest::Approx(std::exp(-11.0)).epsilon(1e-14));
  CHECK(marshall_olkin({1.0, 1.0, 1.0}).atom_mass() ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK_THROWS_AS(marshall_olkin({0.0, 1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("marshall_olkin survival equals the direct closed form") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> rate(0.2, 3.0);
  std::uniform_real_distribution<double> point(0.0, 4.0);
  for (int rep = 0; rep < 10; ++rep) {
    const double l1 = rate(rng), l2 = rate(rng), l12 = rate(rng);
    const auto d = marshall_olkin({l1, l2, l12});
    for (int k = 0; k < 20; ++k) {
      const double x = point(rng), y = point(rng);
      CHECK(d.survival(x, y) ==
            doctest::Approx(mo_survival_direct(l1, l2, l12, x, y))
                .epsilon(1e-14));
    }
  }
}

TEST_CASE("marshall_olkin decomposition weights are (l1+l2)/l and l12/l") {
  const auto d = marshall_olkin({1.0, 2.0, 3.0});
  const auto dec = d.decompose();
  CHECK(dec.weight_ac == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(dec.weight_s == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("block_basu: density, marginal, atom") {
  const auto d = block_basu(1.0, 1.0, 1.0);
  CHECK(d.theta() == doctest::Approx(3.0));
  CHECK(d.density(1.0, 0.5) ==
        doctest::Approx(3.0 * std::exp(-2.5)).epsilon(1e-12));
  CHECK(d.atom_mass() == doctest::Approx(0.0));
  for (double x : {0.0, 0.3, 1.0, 4.0}) {
    const double expected =
        1.5 * std::exp(-2.0 * x) - 0.5 * std::exp(-3.0 * x);
    CHECK(d.margin_x().survival(x) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("block_basu survival equals the explicit display") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> point(0.0, 3.0);
  for (const auto& [l1, l2, l12] :
       {std::array{1.0, 1.0, 1.0}, std::array{1.0, 2.0, 3.0},
        std::array{0.5, 2.5, 0.7}}) {
    const auto d = block_basu(l1, l2, l12);
    for (int k = 0; k < 25; ++k) {
      const double x = point(rng), y = point(rng);
      CHECK(d.survival(x, y) ==
            doctest::Approx(bb_survival_direct(l1, l2, l12, x, y))
                .epsilon(1e-12));
    }
  }
}

TEST_CASE("freund: reduction to block_basu and the theta diagonal") {
  const auto fr = freund({1.5, 1.5, 2.0, 2.0});
  const auto bb = block_basu(1.0, 1.0, 1.0);
  for (double x : {0.2, 0.9, 2.0}) {
    for (double y : {0.1, 0.6, 1.7}) {
      CHECK(fr.density(x, y) ==
            doctest::Approx(bb.density(x, y)).epsilon(1e-12));
    }
  }
  // theta = alpha + beta: diagonal survival is exp(-(alpha+beta) t)
  const auto fr2 = freund({0.8, 1.4, 1.1, 0.9});
  CHECK(fr2.theta() == doctest::Approx(2.2));
  for (double t : {0.3, 1.0, 2.5}) {
    CHECK(fr2.survival(t, t) ==
          doctest::Approx(std::exp(-2.2 * t)).epsilon(1e-12));
  }
  // alpha = alpha' collapses the marginal to a single exponential
  const auto fr3 = freund({1.0, 1.0, 1.0, 1.0});
  for (double x : {0.5, 1.5, 3.0}) {
    CHECK(fr3.margin_x().survival(x) ==
          doctest::Approx(std::exp(-x)).epsilon(1e-12));
  }
}

TEST_CASE("freund rejects the unsupported regime alpha+beta <= max'") {
  CHECK_THROWS_AS(freund({1.0, 1.0, 2.0, 2.0}), std::domain_error);
  CHECK_THROWS_AS(freund({1.0, 1.0, 2.5, 1.0}), std::domain_error);
  CHECK_THROWS_AS(freund({-1.0, 1.0, 0.5, 0.5}), std::invalid_argument);
}

TEST_CASE("freund_to_block_basu substitution") {
  const auto p = freund_to_block_basu(1.0, 1.0, 1.0);
  CHECK(p.alpha == doctest::Approx(1.5));
  CHECK(p.beta == doctest::Approx(1.5));
  CHECK(p.alpha_prime == doctest::Approx(2.0));
  CHECK(p.beta_prime == doctest::Approx(2.0));

  const auto q = freund_to_block_basu(1.0, 2.0, 3.0);
  CHECK(q.alpha == doctest::Approx(2.0));
  CHECK(q.beta == doctest::Approx(4.0));
  CHECK(q.alpha_prime == doctest::Approx(4.0));
  CHECK(q.beta_prime == doctest::Approx(5.0));
}

TEST_CASE("freund round-trip reproduces block_basu densities") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> point(0.01, 3.0);
  const auto d1 = block_basu(0.7, 1.9, 1.3);
  const auto d2 = freund(freund_to_block_basu(0.7, 1.9, 1.3));
  for (int k = 0; k < 50; ++k) {
    double x = point(rng), y = point(rng);
    CHECK(d2.density(x, y) == doctest::Approx(d1.density(x, y)).epsilon(1e-12));
  }
}

TEST_CASE("generalized marshall-olkin") {
  auto e1 = std::make_shared<ExponentialMarginal>(1.0);
  const auto g = generalized_marshall_olkin(e1, e1, e1);
  for (double x : {0.2, 1.0}) {
    for (double y : {0.5, 2.0}) {
      CHECK(g.survival(x, y) ==
            doctest::Approx(mo_survival_direct(1.0, 1.0, 1.0, x, y))
                .epsilon(1e-14));
    }
    CHECK(g.survival(x, 0.0) ==
          doctest::Approx(g.f1().survival(x) * g.f3().survival(x))
              .epsilon(1e-14));
  }

  // Weibull-type third shock: cumulative hazard R3(x) = x^2
  auto weib = std::make_shared<HazardDefinedMarginal>(
      [](double x) { return 2.0 * x; }, 100.0);
  const auto gw = generalized_marshall_olkin(e1, e1, weib);
  CHECK(gw.survival(1.0, 1.0) ==
        doctest::Approx(std::exp(-3.0)).epsilon(1e-8));
}

TEST_CASE("gmo with exponential shocks matches marshall_olkin pointwise") {
  const MoParams p{0.8, 1.7, 0.6};
  const auto mo = marshall_olkin(p);
  const auto g = generalized_marshall_olkin(
      std::make_shared<ExponentialMarginal>(p.lambda1),
      std::make_shared<ExponentialMarginal>(p.lambda2),
      std::make_shared<ExponentialMarginal>(p.lambda12));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> point(0.0, 5.0);
  for (int k = 0; k < 40; ++k) {
    const double x = point(rng), y = point(rng);
    CHECK(g.survival(x, y) ==
          doctest::Approx(mo.survival(x, y)).epsilon(1e-14));
  }
}
