#include <doctest.h>

#include "cinfmc/errors.hpp"
#include "cinfmc/randmat.hpp"
#include "test_util.hpp"

using namespace cinfmc;

TEST_CASE("haar basis of size 1x1 is +-1 with equal odds") {
  Rng rng(11);
  int plus = 0;
  const int draws = 4000;
  for (int i = 0; i < draws; ++i) {
    const Matrix q = sample_haar_basis(1, 1, rng);
    CHECK(std::abs(std::abs(q(0, 0)) - 1.0) < 1e-15);
    if (q(0, 0) > 0) ++plus;
  }
  CHECK(plus > 0.45 * draws);
  CHECK(plus < 0.55 * draws);
}

TEST_CASE("haar basis is orthonormal") {
  Rng rng(3);
  CHECK(testutil::orthonormality_error(sample_haar_basis(4, 2, rng)) < 1e-12);
  CHECK(testutil::orthonormality_error(sample_haar_basis(50, 50, rng)) < 1e-12);
  CHECK(testutil::orthonormality_error(sample_haar_basis(200, 17, rng)) < 1e-12);
}

TEST_CASE("haar basis rejects bad sizes") {
  Rng rng(1);
  CHECK_THROWS_AS(sample_haar_basis(3, 4, rng), ParameterError);
  CHECK_THROWS_AS(sample_haar_basis(3, 0, rng), ParameterError);
}

TEST_CASE("haar second moment E[Q11^2] = 1/n") {
  Rng rng(2024);
  const int draws = 100000;
  double acc = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double v = sample_haar_basis(10, 1, rng)(0, 0);
    acc += v * v;
  }
  CHECK(std::abs(acc / draws - 0.1) < 0.01);
}

TEST_CASE("haar law is invariant under a fixed rotation") {
  Rng rot_rng(99);
  const Matrix R = sample_haar_basis(5, 5, rot_rng);
  Rng a(1), b(2);
  std::vector<double> plain, rotated;
  for (int i = 0; i < 10000; ++i) {
    plain.push_back(sample_haar_basis(5, 2, a)(0, 0));
    rotated.push_back((R * sample_haar_basis(5, 2, b))(0, 0));
  }
  CHECK(testutil::ks_statistic(plain, rotated) < 0.05);
}

TEST_CASE("block mask examples") {
  const MaskMatrix m = make_block_mask(3, 1);
  Matrix expected(3, 3);
  expected << 1, 1, 1, 1, 0, 0, 1, 0, 0;
  CHECK(m.entries() == expected);
  CHECK(m.m() == 5);
  CHECK(m.block_index() == 1);

  CHECK(make_block_mask(3, 3).entries() == Matrix::Ones(3, 3));
  CHECK(make_block_mask(3, 3).m() == 9);
  CHECK(make_block_mask(3, 0).entries() == Matrix::Zero(3, 3));
  CHECK(make_block_mask(3, 0).m() == 0);

  CHECK_THROWS_AS(make_block_mask(3, 4), ParameterError);
  CHECK_THROWS_AS(make_block_mask(3, -1), ParameterError);
}

TEST_CASE("block mask count identity and 1-based rule") {
  for (int n = 1; n <= 12; ++n) {
    for (int l = 0; l <= n; ++l) {
      const MaskMatrix m = make_block_mask(n, l);
      CHECK(m.m() == static_cast<long long>(n) * n - static_cast<long long>(n - l) * (n - l));
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
          CHECK(m.observed(i - 1, j - 1) == (std::min(i, j) <= l));
    }
  }
}

TEST_CASE("hidden selector picks the trailing rows") {
  const MaskMatrix m = make_block_mask(5, 2);
  const Matrix sel = m.hidden_selector();
  REQUIRE(sel.rows() == 5);
  REQUIRE(sel.cols() == 3);
  Matrix X = Matrix::Random(5, 5);
  CHECK((sel.transpose() * X - X.bottomRows(3)).norm() == 0.0);
  // Hidden block of the mask is exactly sel^T M sel = 0.
  CHECK((sel.transpose() * m.entries() * sel).norm() == 0.0);
}

TEST_CASE("arbitrary masks must be 0/1") {
  Matrix e = Matrix::Ones(2, 2);
  CHECK(MaskMatrix::from_entries(e).m() == 4);
  CHECK(MaskMatrix::from_entries(e).block_index() == -1);
  e(0, 1) = 0.5;
  CHECK_THROWS_AS(MaskMatrix::from_entries(e), ParameterError);
  CHECK_THROWS_AS(MaskMatrix::from_entries(Matrix::Ones(2, 3)), ParameterError);
}

TEST_CASE("make_lowrank rank zero") {
  Rng rng(5);
  const auto inst = make_lowrank(5, 0, GenerationMode::WorstCase, SigmaSpec::UnitOnes, rng);
  CHECK(inst.X_sol == Matrix::Zero(5, 5));
  CHECK(inst.Ubar.cols() == 0);
  CHECK(inst.Uperp.cols() == 5);
  CHECK(testutil::orthonormality_error(inst.Uperp) < 1e-12);
}

TEST_CASE("make_lowrank worst case is a symmetric projector") {
  Rng rng(6);
  const auto inst = make_lowrank(5, 2, GenerationMode::WorstCase, SigmaSpec::UnitOnes, rng);
  CHECK(testutil::jacobi_singular_values(inst.X_sol).sum() == doctest::Approx(2.0).epsilon(1e-10));
  CHECK((inst.X_sol - inst.X_sol.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((inst.X_sol - inst.Ubar * inst.Ubar.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(inst.Vbar == inst.Ubar);
  CHECK(inst.Vperp == inst.Uperp);
  CHECK(inst.sigma == Vector::Ones(2));

  // RandomPositive is overridden: the worst case always has unit spectrum.
  const auto forced = make_lowrank(8, 3, GenerationMode::WorstCase, SigmaSpec::RandomPositive, rng);
  CHECK(forced.sigma == Vector::Ones(3));
  Eigen::SelfAdjointEigenSolver<Matrix> es(forced.X_sol);
  CHECK(es.eigenvalues().minCoeff() > -1e-12);
}

TEST_CASE("make_lowrank independent instance invariants") {
  Rng rng(7);
  const auto inst = make_lowrank(40, 3, GenerationMode::Independent, SigmaSpec::RandomPositive, rng);
  const Vector s = testutil::jacobi_singular_values(inst.X_sol);
  CHECK((s.array() > 1e-8 * s(0)).count() == 3);
  CHECK((s.array() > 1e-8).count() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(inst.sigma(i) >= 0.5);
    CHECK(inst.sigma(i) <= 1.5);
  }

  Matrix fullU(40, 40), fullV(40, 40);
  fullU << inst.Ubar, inst.Uperp;
  fullV << inst.Vbar, inst.Vperp;
  CHECK((fullU.transpose() * fullU - Matrix::Identity(40, 40)).norm() < 1e-10);
  CHECK((fullV.transpose() * fullV - Matrix::Identity(40, 40)).norm() < 1e-10);
  CHECK((inst.Ubar.transpose() * inst.Uperp).norm() < 1e-10);
  CHECK((inst.Vbar.transpose() * inst.Vperp).norm() < 1e-10);
  CHECK((inst.X_sol - inst.Ubar * inst.sigma.asDiagonal() * inst.Vbar.transpose()).norm() < 1e-10);
  CHECK_THROWS_AS(make_lowrank(4, 5, GenerationMode::Independent, SigmaSpec::UnitOnes, rng),
                  ParameterError);
}

TEST_CASE("make_lowrank is deterministic given the seed") {
  Rng a(42), b(42);
  const auto x = make_lowrank(20, 4, GenerationMode::Independent, SigmaSpec::RandomPositive, a);
  const auto y = make_lowrank(20, 4, GenerationMode::Independent, SigmaSpec::RandomPositive, b);
  CHECK(x.X_sol == y.X_sol);
  CHECK(x.Uperp == y.Uperp);
}

TEST_CASE("apply_mask") {
  Rng rng(8);
  const Matrix X = Matrix::Random(3, 3);
  CHECK(apply_mask(make_block_mask(3, 3), X) == X);
  CHECK(apply_mask(make_block_mask(3, 0), X) == Matrix::Zero(3, 3));
  const Matrix masked = apply_mask(make_block_mask(3, 1), Matrix::Ones(3, 3));
  CHECK(masked.sum() == 5.0);
  CHECK(masked == make_block_mask(3, 1).entries());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(apply_mask(make_block_mask(3, 2), X)(i, j) ==
            (std::min(i, j) < 2 ? X(i, j) : 0.0));
  CHECK_THROWS_AS(apply_mask(make_block_mask(3, 1), Matrix::Ones(4, 4)), ParameterError);
}
