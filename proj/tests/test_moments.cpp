#include "blm/moments.hpp"

#include <cmath>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <doctest.h>

#include "blm/families.hpp"

using namespace blm;

namespace {

BlmDistribution mo111() { return marshall_olkin({1.0, 1.0, 1.0}); }

BlmDistribution singular3() {
  return make_blm(std::make_shared<ExponentialMarginal>(3.0),
                  std::make_shared<ExponentialMarginal>(3.0), 3.0);
}

}  // namespace

TEST_CASE("lst closed form") {
  const auto mo = mo111();
  CHECK(lst(mo, {0.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(lst(mo, {1.0, 1.0}) == doctest::Approx(7.0 / 15.0).epsilon(1e-14));

  // degenerate singular law: L(s,t) = theta / (theta + s + t)
  const auto sing = singular3();
  for (double s : {0.0, 0.7, 2.0}) {
    for (double t : {0.0, 1.1}) {
      CHECK(lst(sing, {s, t}) ==
            doctest::Approx(3.0 / (3.0 + s + t)).epsilon(1e-14));
    }
  }
  CHECK_THROWS_AS(lst(mo, {-0.5, 0.0}), std::invalid_argument);
}

TEST_CASE("lst agrees with the lemma-1 quadrature oracle") {
  const auto mo = mo111();
  CHECK(quadrature_oracle(mo, OracleKind::lemma1_lst, 1.0, 1.0) ==
        doctest::Approx(7.0 / 15.0).epsilon(1e-6));
  const auto sing = singular3();
  CHECK(quadrature_oracle(sing, OracleKind::lemma1_lst, 0.7, 1.1) ==
        doctest::Approx(3.0 / (3.0 + 1.8)).epsilon(1e-6));
}

TEST_CASE("mgf closed form and identities") {
  const auto mo = mo111();
  CHECK(mgf(mo, {0.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-14));
  // mgf at negated arguments is the lst
  for (double s : {0.3, 1.0}) {
    for (double t : {0.2, 0.9}) {
      CHECK(mgf(mo, {-s, -t}) ==
            doctest::Approx(lst(mo, {s, t})).epsilon(1e-13));
    }
  }
  CHECK_THROWS_AS(mgf(mo, {2.0, 1.5}), std::domain_error);  // s+t >= theta
  // marginal divergence is reported by the marginal's name
  try {
    mgf(mo, {2.5, 0.0});
    FAIL("expected marginal mgf divergence");
  } catch (const std::domain_error& e) {
    CHECK(std::string(e.what()).find("exponential") != std::string::npos);
  }
}

TEST_CASE("mgf approaches the independence product as lambda12 -> 0") {
  const TransformPoint p{0.3, 0.4};
  double prev_err = 1.0;
  for (double eps : {1e-2, 1e-3}) {
    const auto d = marshall_olkin({1.0, 1.0, eps});
    const double joint = mgf(d, p);
    const double rate = 1.0 + eps;
    const double prod = (rate / (rate - p.s)) * (rate / (rate - p.t));
    const double err = std::abs(joint / prod - 1.0);
    CHECK(err < 10.0 * eps);
    CHECK(err < prev_err);
    prev_err = err;
  }
}

TEST_CASE("mgf agrees with the lemma-2 quadrature oracle") {
  const auto mo = mo111();
  CHECK(quadrature_oracle(mo, OracleKind::lemma2_mgf, 0.0, 0.0) ==
        doctest::Approx(1.0).epsilon(1e-8));
  CHECK(quadrature_oracle(mo, OracleKind::lemma2_mgf, 0.5, 0.8) ==
        doctest::Approx(mgf(mo, {0.5, 0.8})).epsilon(1e-6));
  // negative arguments reproduce the lst
  CHECK(quadrature_oracle(mo, OracleKind::lemma2_mgf, -1.0, -1.0) ==
        doctest::Approx(7.0 / 15.0).epsilon(1e-6));
}

TEST_CASE("product moments") {
  const auto mo = mo111();
  CHECK(product_moment(mo, {1, 1}) == doctest::Approx(exy(mo)).epsilon(1e-15));
  CHECK(product_moment(mo, {1, 1}) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  // hand value for E[X^2 Y], confirmed by the lemma-3 oracle below
  CHECK(product_moment(mo, {2, 1}) ==
        doctest::Approx(7.0 / 18.0).epsilon(1e-14));
  CHECK(quadrature_oracle(mo, OracleKind::lemma3_moment, 1.0, 1.0) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-6));
  CHECK(quadrature_oracle(mo, OracleKind::lemma3_moment, 2.0, 1.0) ==
        doctest::Approx(7.0 / 18.0).epsilon(1e-6));
  CHECK_THROWS_AS(product_moment(mo, {0, 1}), std::invalid_argument);
}

TEST_CASE("product moment symmetry for equal margins") {
  const auto bb = block_basu(1.0, 1.0, 1.0);
  for (const auto& [i, j] : {std::pair{1, 2}, std::pair{2, 3}}) {
    CHECK(product_moment(bb, {i, j}) ==
          doctest::Approx(product_moment(bb, {j, i})).epsilon(1e-15));
  }
}

TEST_CASE("exy examples") {
  CHECK(exy(mo111()) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  // Block-Basu marginal mean 1.5/2 - 0.5/3 = 7/12, so E[XY] = 7/18
  const auto bb = block_basu(1.0, 1.0, 1.0);
  CHECK(bb.margin_x().raw_moment(1) ==
        doctest::Approx(7.0 / 12.0).epsilon(1e-14));
  CHECK(exy(bb) == doctest::Approx(7.0 / 18.0).epsilon(1e-14));
  CHECK(quadrature_oracle(bb, OracleKind::lemma3_moment, 1.0, 1.0) ==
        doctest::Approx(7.0 / 18.0).epsilon(1e-6));

  // Lomax alpha = 1 has no mean
  const auto heavy = make_blm(std::make_shared<LomaxMarginal>(1.0, 1.0),
                              std::make_shared<LomaxMarginal>(1.0, 1.0), 2.0);
  CHECK_THROWS_AS(exy(heavy), std::domain_error);
}

TEST_CASE("pearson correlation") {
  CHECK(pearson_correlation(mo111()) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  // MO correlation is lambda12 / lambda
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> rate(0.3, 2.5);
  for (int rep = 0; rep < 5; ++rep) {
    const MoParams p{rate(rng), rate(rng), rate(rng)};
    CHECK(pearson_correlation(marshall_olkin(p)) ==
          doctest::Approx(p.lambda12 / p.lambda()).epsilon(1e-12));
  }
  CHECK(pearson_correlation(singular3()) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mttf") {
  const auto mo = mo111();
  CHECK(mttf(mo, SystemKind::series) == doctest::Approx(1.0 / 3.0));
  CHECK(mttf(mo, SystemKind::parallel) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  // theta >= 1 / (E[X] + E[Y]) so the parallel mttf is nonnegative
  for (const auto& d :
       {mo111(), block_basu(1.0, 2.0, 3.0), freund({1.2, 0.8, 1.5, 0.9})}) {
    const double mean_sum =
        d.margin_x().raw_moment(1) + d.margin_y().raw_moment(1);
    CHECK(d.theta() >= 1.0 / mean_sum - 1e-12);
    CHECK(mttf(d, SystemKind::parallel) >= -1e-12);
  }
}

TEST_CASE("closed forms agree with the oracles across random families") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> rate(0.4, 2.0);
  std::vector<BlmDistribution> corpus;
  for (int rep = 0; rep < 2; ++rep) {
    corpus.push_back(marshall_olkin({rate(rng), rate(rng), rate(rng)}));
    corpus.push_back(block_basu(rate(rng), rate(rng), rate(rng)));
    const double a = rate(rng), b = rate(rng);
    std::uniform_real_distribution<double> prime(0.6, 0.95);
    corpus.push_back(
        freund({a, b, prime(rng) * (a + b), prime(rng) * (a + b)}));
  }
  for (const auto& d : corpus) {
    const double theta = d.theta();
    CHECK(lst(d, {0.9, 0.3}) ==
          doctest::Approx(
              quadrature_oracle(d, OracleKind::lemma1_lst, 0.9, 0.3))
              .epsilon(1e-6));
    const double s = 0.2 * theta, t = 0.15 * theta;
    CHECK(mgf(d, {s, t}) ==
          doctest::Approx(quadrature_oracle(d, OracleKind::lemma2_mgf, s, t))
              .epsilon(1e-6));
    CHECK(product_moment(d, {2, 2}) ==
          doctest::Approx(
              quadrature_oracle(d, OracleKind::lemma3_moment, 2.0, 2.0))
              .epsilon(1e-6));
  }
}

TEST_CASE("mgf diverges monotonically toward the pole s+t = theta") {
  const auto bb = block_basu(1.0, 1.0, 1.0);
  const double theta = bb.theta();
  double prev = 0.0;
  for (int k = 1; k <= 6; ++k) {
    const double s = 0.5 * theta * (1.0 - std::pow(2.0, -k));
    const double v = mgf(bb, {s, s});
    CHECK(v > prev);
    prev = v;
  }
  CHECK(prev > 50.0);
}

TEST_CASE("E[XY] stays between 1/theta^2 and the squared mean sum") {
  for (const auto& d : {mo111(), block_basu(0.5, 1.5, 0.8),
                        freund({1.0, 1.3, 1.1, 0.7}), singular3()}) {
    const double v = exy(d);
    const double theta = d.theta();
    const double mean_sum =
        d.margin_x().raw_moment(1) + d.margin_y().raw_moment(1);
    CHECK(v >= 1.0 / (theta * theta) - 1e-12);
    CHECK(v <= mean_sum * mean_sum + 1e-12);
  }
}
