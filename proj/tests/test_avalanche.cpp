#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "qjl/avalanche.hpp"

using namespace qjl;

namespace {

Mat2 rotation(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return {c, -s, s, c};
}

// R(theta) diag(mu, 1/mu): unimodular, norm mu, controlled axes.
Mat2 hyperbolic_block(double mu, double theta) {
  return rotation(theta) * Mat2{mu, 0.0, 0.0, 1.0 / mu};
}

}  // namespace

TEST_CASE("ap_verify on an aligned diagonal chain") {
  const double mu = 100.0;
  std::vector<Mat2> chain(10, Mat2{mu, 0.0, 0.0, 1.0 / mu});
  const ApVerdict v = ap_verify(chain);
  CHECK(v.hypotheses_met);
  CHECK(v.mu == doctest::Approx(mu).epsilon(1e-12));
  CHECK(v.lhs <= 1e-10);  // diagonal chains telescope exactly
  CHECK(v.direct_log_norm ==
        doctest::Approx(10.0 * std::log(mu)).epsilon(1e-12));
  CHECK(v.estimate == doctest::Approx(10.0 * std::log(mu)).epsilon(1e-12));
}

TEST_CASE("ap_verify on randomly tilted hyperbolic chains") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> tilt(-0.3, 0.3);
  const double mu = 1e4;
  const std::size_t n = 20;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Mat2> chain;
    for (std::size_t j = 0; j < n; ++j)
      chain.push_back(hyperbolic_block(mu, tilt(rng)));
    const ApVerdict v = ap_verify(chain);
    CHECK(v.hypotheses_met);
    // the telescoping error is at most C n / mu; 100 is the envelope
    CHECK(v.lhs <= 100.0 * double(n) / mu);
    CHECK(v.bound_ratio <= 100.0);
    CHECK(std::abs(v.direct_log_norm - v.estimate) <= 100.0 * double(n) / mu);
  }
}

TEST_CASE("ap_verify flags non-hyperbolic chains") {
  std::vector<Mat2> chain(8, rotation(0.7));
  const ApVerdict v = ap_verify(chain);
  CHECK_FALSE(v.hypotheses_met);  // mu = 1 < n
  CHECK(v.mu == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ap_verify flags a near-orthogonal pair collapse") {
  // two strongly hyperbolic blocks with perpendicular axes: pair norm
  // collapses, defect exceeds (1/2) log mu
  const double mu = 1e6;
  std::vector<Mat2> chain = {hyperbolic_block(mu, 0.0),
                             hyperbolic_block(mu, M_PI_2),
                             hyperbolic_block(mu, 0.0)};
  const ApVerdict v = ap_verify(chain);
  CHECK_FALSE(v.hypotheses_met);
}

TEST_CASE("ap_verify rejects expanding determinants") {
  std::vector<Mat2> chain(5, Mat2{10.0, 0.0, 0.0, 10.0});  // det = 100
  CHECK_THROWS_AS(ap_verify(chain), DeterminantTooLarge);
}

TEST_CASE("ap_verify needs three blocks") {
  std::vector<Mat2> chain(2, Mat2{5.0, 0.0, 0.0, 0.2});
  CHECK_THROWS_AS(ap_verify(chain), InsufficientData);
}

TEST_CASE("ap_estimate_log_norm guards its hypotheses") {
  ApBlockChain chain;
  chain.n = 3;
  chain.block_log_norms = {0.0, 0.0, 0.0};  // mu = 1: not hyperbolic
  chain.pair_log_norms = {0.0, 0.0};
  chain.mu = 1.0;
  CHECK_THROWS_AS(ap_estimate_log_norm(chain), HypothesesNotMet);

  chain.block_log_norms = {10.0, 10.0, 10.0};
  chain.pair_log_norms = {20.0, 20.0};
  chain.mu = std::exp(10.0);
  CHECK(ap_estimate_log_norm(chain) == doctest::Approx(30.0).epsilon(1e-12));
}

TEST_CASE("chain order matters") {
  // same multiset of blocks, different order, different product norm
  const double mu = 1e3;
  std::vector<Mat2> a = {hyperbolic_block(mu, 0.1), hyperbolic_block(mu, 0.1),
                         hyperbolic_block(mu, 1.4)};
  std::vector<Mat2> b = {a[0], a[2], a[1]};
  const ApVerdict va = ap_verify(a);
  const ApVerdict vb = ap_verify(b);
  CHECK(va.direct_log_norm != vb.direct_log_norm);
}

TEST_CASE("cocycle block chain in the hyperbolic regime") {
  CocycleSpec spec;
  spec.a = FourierSeries::cosine_wave(6.0);  // lambda = 3
  spec.omega = (std::sqrt(5.0) - 1.0) / 2.0;
  spec.energy = 0.0;
  const ApBlockChain chain = cocycle_block_chain(spec, 0.123, 64, 16);
  REQUIRE(chain.n == 16);
  REQUIRE(chain.block_log_norms.size() == 16);
  REQUIRE(chain.pair_log_norms.size() == 15);
  // mu should be around exp(64 log 3) -- far above n = 16
  CHECK(chain.hypotheses_met());
  for (double b : chain.block_log_norms)
    CHECK(b / 64.0 == doctest::Approx(std::log(3.0)).epsilon(0.15));
  // AP estimate of the long product vs the direct computation at scale 16*64
  const double est = ap_estimate_log_norm(chain);
  const double direct = normalized_log_norm(spec, 0.123, 16 * 64);
  CHECK(std::abs(est - direct) <= 0.5);
}

TEST_CASE("multiscale combination shrinks with hyperbolicity") {
  const PhaseSampler sampler = PhaseSampler::grid(128);
  SUBCASE("rotation: exactly zero") {
    CocycleSpec s;
    s.omega = (std::sqrt(5.0) - 1.0) / 2.0;
    CHECK(multiscale_combination(s, 32, 4, sampler) <= 1e-12);
  }
  SUBCASE("constant hyperbolic") {
    CocycleSpec s;
    s.omega = (std::sqrt(5.0) - 1.0) / 2.0;
    s.energy = 3.0;
    // the norm prefactor leaves a log(c)/(m n) remainder, about 1e-3 here
    CHECK(multiscale_combination(s, 64, 4, sampler) <= 2e-3);
  }
  SUBCASE("almost-Mathieu lambda = 3") {
    CocycleSpec s;
    s.a = FourierSeries::cosine_wave(6.0);
    s.omega = (std::sqrt(5.0) - 1.0) / 2.0;
    CHECK(multiscale_combination(s, 64, 4, sampler) <= 1e-2);
  }
  SUBCASE("m < 3 raises") {
    CocycleSpec s;
    s.omega = 0.5;
    CHECK_THROWS_AS(multiscale_combination(s, 16, 2, sampler),
                    InsufficientData);
  }
}
