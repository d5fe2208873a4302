#include <doctest.h>

#include <random>

#include "cinfmc/errors.hpp"
#include "cinfmc/freeprob.hpp"
#include "cinfmc/phase.hpp"

using namespace cinfmc;

TEST_CASE("curve values") {
  CHECK(beta_wc(0.5) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(std::abs(beta_wc(0.8) - 0.1) < 1e-12);
  CHECK(std::abs(beta_wc(0.2) - 0.1) < 1e-12);
  CHECK(std::abs(beta_wc_from_alpha(0.96) - 0.1) < 1e-12);
  CHECK(std::abs(alpha_from_eta(0.8) - 0.96) < 1e-12);
  CHECK_THROWS_AS(beta_wc(0.0), ParameterError);
  CHECK_THROWS_AS(beta_wc(1.0), ParameterError);
  CHECK_THROWS_AS(beta_wc_from_alpha(1.0), ParameterError);
}

TEST_CASE("both parametrisations agree") {
  for (int i = 1; i < 100; ++i) {
    const double eta = i / 100.0;
    CHECK(std::abs(beta_wc(eta) - beta_wc_from_alpha(alpha_from_eta(eta))) < 1e-12);
    CHECK(beta_wc(eta) >= 0.0);
    CHECK(beta_wc(eta) <= 0.5);
  }
}

TEST_CASE("curve is symmetric about one half") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.001, 0.999);
  for (int i = 0; i < 50; ++i) {
    const double eta = u(rng);
    CHECK(std::abs(beta_wc(eta) - beta_wc(1.0 - eta)) < 1e-14);
  }
}

// Only on eta >= 1/2: below that the curve is the mirror image and the
// lower edge at (beta_wc(eta), eta) is not 1/2.
TEST_CASE("curve is where the Q edge hits one") {
  for (int i = 0; i < 20; ++i) {
    const double eta = 0.5 + 0.49 * i / 19.0;
    const double b = beta_wc(eta);
    CHECK(std::abs(lambda_max_q_theory(SpectralParams::make(b, eta)) - 1.0) < 1e-9);
  }
}

TEST_CASE("classification") {
  CHECK(classify(0.05, 0.8).region == Region::Recoverable);
  CHECK(classify(0.2, 0.8).region == Region::NotRecoverable);
  CHECK(classify(beta_wc(0.8), 0.8).region == Region::Boundary);
  CHECK(classify(0.6, 0.3).region == Region::NotRecoverable);
  CHECK(classify(0.05, 0.8).alpha == doctest::Approx(0.96));
  CHECK(std::string(to_string(Region::Boundary)) == "boundary");
  CHECK_THROWS_AS(classify(-0.1, 0.8), ParameterError);
}

TEST_CASE("pt_curve") {
  const auto c = pt_curve({0.2, 0.5, 0.8});
  REQUIRE(c.size() == 3);
  CHECK(c[1].beta == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(c[2].alpha == doctest::Approx(0.96));
  for (const auto& p : c) CHECK(p.region == Region::Boundary);
  CHECK_THROWS_AS(pt_curve({0.5, 1.0}), ParameterError);
}

TEST_CASE("below one half the Q edge at the curve is not one") {
  CHECK(lambda_max_q_theory(SpectralParams::make(beta_wc(0.3), 0.3)) > 2.0);
}
