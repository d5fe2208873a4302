#include <doctest.h>

#include <random>

#include "cinfmc/equivalence.hpp"
#include "cinfmc/errors.hpp"
#include "cinfmc/phase.hpp"
#include "cinfmc/solver.hpp"
#include "test_util.hpp"

using namespace cinfmc;

TEST_CASE("Schatten norms") {
  const Matrix I = Matrix::Identity(5, 5);
  CHECK(ell_p_star(I, 1.0) == doctest::Approx(5.0));
  CHECK(ell_p_star(I, 0.0) == 5.0);
  CHECK(ell_p_star(I, 2.0) == doctest::Approx(std::sqrt(5.0)));
  Rng rng(1);
  const auto inst = make_lowrank(30, 3, GenerationMode::WorstCase, SigmaSpec::UnitOnes, rng);
  CHECK(std::abs(ell_p_star(inst.X_sol, 1.0) - 3.0) < 1e-10);
  CHECK(ell_p_star(inst.X_sol, 0.0) == 3.0);
  const Matrix R = Matrix::Random(7, 7);
  CHECK(std::abs(ell_p_star(R, 2.0) - R.norm()) < 1e-12);
  CHECK(std::abs(nuclear_norm(R) - testutil::jacobi_singular_values(R).sum()) < 1e-10);
  CHECK_THROWS_AS(ell_p_star(R, -1.0), ParameterError);
}

TEST_CASE("singular value thresholding") {
  Rng rng(2);
  const Matrix X = Matrix::Random(6, 6);
  const double smax = testutil::jacobi_singular_values(X)(0);
  CHECK(svt(X, smax + 1e-9).norm() < 1e-12);
  CHECK((svt(X, 0.0) - X).cwiseAbs().maxCoeff() < 1e-12);
  Matrix D = Matrix::Zero(2, 2);
  D(0, 0) = 3.0;
  D(1, 1) = 1.0;
  Matrix expected = Matrix::Zero(2, 2);
  expected(0, 0) = 1.0;
  CHECK((svt(D, 2.0) - expected).cwiseAbs().maxCoeff() < 1e-12);
  for (double tau : {0.1, 0.5, 1.0}) CHECK(nuclear_norm(svt(X, tau)) <= nuclear_norm(X) + 1e-12);
  CHECK_THROWS_AS(svt(X, -1.0), ParameterError);
}

TEST_CASE("rmse") {
  CHECK(rmse(Matrix::Ones(2, 2), Matrix::Zero(2, 2)) == doctest::Approx(2.0));
  CHECK_THROWS_AS(rmse(Matrix::Ones(2, 2), Matrix::Zero(3, 3)), ParameterError);
}

TEST_CASE("options are validated") {
  SolveOptions o;
  CHECK_NOTHROW(o.validate());
  o.step = 0.0;
  CHECK_THROWS_AS(o.validate(), ParameterError);
  o = SolveOptions{};
  o.max_iters = 0;
  CHECK_THROWS_AS(o.validate(), ParameterError);
}

TEST_CASE("fully observed and empty problems") {
  Rng rng(3);
  const auto inst = make_lowrank(10, 2, GenerationMode::Independent, SigmaSpec::RandomPositive, rng);
  const auto full = make_block_mask(10, 10);
  const auto r = complete_nuclear(apply_mask(full, inst.X_sol), full, SolveOptions{}, &inst);
  CHECK((r.X_hat - inst.X_sol).norm() < 1e-12);
  CHECK(*r.rmse < 1e-12);
  CHECK(r.success);

  const auto z = make_lowrank(10, 0, GenerationMode::WorstCase, SigmaSpec::UnitOnes, rng);
  const auto mask = make_block_mask(10, 6);
  const auto r0 = complete_nuclear(Matrix::Zero(10, 10), mask, SolveOptions{}, &z);
  CHECK(r0.X_hat.norm() == 0.0);
  CHECK(*r0.rmse == 0.0);
  CHECK(r0.success);

  const auto nt = complete_nuclear(Matrix::Zero(10, 10), mask, SolveOptions{});
  CHECK_FALSE(nt.rmse.has_value());
}

TEST_CASE("observations outside the mask are rejected") {
  Matrix Y = Matrix::Zero(6, 6);
  Y(5, 5) = 1.0;
  CHECK_THROWS_AS(complete_nuclear(Y, make_block_mask(6, 3), SolveOptions{}), ParameterError);
  CHECK_THROWS_AS(complete_nuclear(Matrix::Zero(5, 5), make_block_mask(6, 3), SolveOptions{}),
                  ParameterError);
}

TEST_CASE("iteration cap is honoured and the result stays feasible") {
  Rng rng(4);
  const auto inst = make_lowrank(40, 4, GenerationMode::WorstCase, SigmaSpec::UnitOnes, rng);
  const auto mask = make_block_mask(40, 30);
  SolveOptions o;
  o.max_iters = 1;
  const auto r = complete_nuclear(apply_mask(mask, inst.X_sol), mask, o, &inst);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 1);
  CHECK(r.feasibility_residual == 0.0);
  CHECK(r.to_json().contains("rmse_rel"));
}

TEST_CASE("low-rank worst case below the transition is recovered") {
  int ok = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    Rng rng(500 + s);
    const auto inst = make_lowrank(80, 4, GenerationMode::WorstCase, SigmaSpec::UnitOnes, rng);
    const auto mask = make_block_mask(80, 64);
    const auto r = complete_nuclear(apply_mask(mask, inst.X_sol), mask, SolveOptions{}, &inst);
    CHECK(r.feasibility_residual == 0.0);
    CHECK(r.objective <= nuclear_norm(inst.X_sol) + 1e-6);
    if (r.success) ++ok;
  }
  CHECK(ok >= 18);
}

TEST_CASE("solution scales with the data") {
  Rng rng(6);
  const auto inst = make_lowrank(40, 3, GenerationMode::Independent, SigmaSpec::RandomPositive, rng);
  const auto mask = make_block_mask(40, 32);
  const Matrix Y = apply_mask(mask, inst.X_sol);
  SolveOptions o;
  const auto base = complete_nuclear(Y, mask, o);
  o.step *= 10.0;
  const auto scaled = complete_nuclear(10.0 * Y, mask, o);
  CHECK((scaled.X_hat - 10.0 * base.X_hat).norm() / (10.0 * base.X_hat.norm()) <= 1e-8);
}

TEST_CASE("solver and certificate agree away from the transition") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> ue(0.6, 0.95), ub(0.01, 0.3);
  int agree = 0, total = 0;
  while (total < 50) {
    const double eta = ue(rng), beta = ub(rng);
    const double bwc = beta_wc(eta);
    if (std::abs(beta - bwc) < 0.2 * bwc) continue;
    const int n = 60;
    const int k = static_cast<int>(std::lround(beta * n));
    const int l = static_cast<int>(std::lround(eta * n));
    if (k < 1 || k > l) continue;
    Rng r(rng());
    const auto inst = make_lowrank(n, k, GenerationMode::Independent, SigmaSpec::RandomPositive, r);
    const auto mask = make_block_mask(n, l);
    const auto cert = check_equivalence(inst, mask);
    const auto sol = complete_nuclear(apply_mask(mask, inst.X_sol), mask, SolveOptions{}, &inst);
    if (cert.equivalent == sol.success) ++agree;
    ++total;
  }
  CHECK(agree >= 45);
}
