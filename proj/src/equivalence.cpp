#include "cinfmc/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cinfmc/errors.hpp"

namespace cinfmc {

namespace {

void require_block_and_rank(const LowRankInstance& inst, const MaskMatrix& mask) {
  const int l = mask.block_index();
  if (l < 0) throw ParameterError("certificate requires a block mask");
  if (mask.n() != inst.n) throw ParameterError("mask and instance sizes differ");
  if (inst.k > l) {
    throw AssumptionViolated("certificate requires k <= l (k=" + std::to_string(inst.k) +
                             ", l=" + std::to_string(l) + ")");
  }
}

Matrix hidden_rows(const Matrix& A, int l) { return A.bottomRows(A.rows() - l); }

Matrix lambda_factor(const Matrix& perp, const Matrix& bar, int l, bool& ill, int& rank) {
  const Matrix B = hidden_rows(perp, l);
  Matrix pinv = pseudo_inverse(B, kPinvRelativeCutoff, &rank);
  if (rank < std::min(B.rows(), B.cols())) ill = true;
  return pinv * hidden_rows(bar, l);
}

}  // namespace

nlohmann::json CertificateReport::to_json() const {
  return {{"lambda_max_product", lambda_max_product},
          {"lambda_max_V", lambda_max_V},
          {"lambda_max_U", lambda_max_U},
          {"certificate_residual", certificate_residual},
          {"equivalent", equivalent},
          {"boundary", boundary},
          {"sufficient_only", sufficient_only},
          {"ill_conditioned", ill_conditioned}};
}

Matrix pseudo_inverse(const Matrix& A, double rel_cutoff, int* rank) {
  if (A.size() == 0) {
    if (rank) *rank = 0;
    return Matrix::Zero(A.cols(), A.rows());
  }
  Eigen::BDCSVD<Matrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  const double cutoff = rel_cutoff * s(0);
  Vector inv = Vector::Zero(s.size());
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff) {
      inv(i) = 1.0 / s(i);
      ++r;
    }
  }
  if (rank) *rank = r;
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

LambdaFactors build_lambda_factors(const LowRankInstance& inst, const MaskMatrix& mask) {
  require_block_and_rank(inst, mask);
  const int l = mask.block_index();
  LambdaFactors f;
  int rank_v = 0;
  int rank_u = 0;
  f.lambda_V = lambda_factor(inst.Vperp, inst.Vbar, l, f.ill_conditioned, rank_v);
  f.lambda_U = lambda_factor(inst.Uperp, inst.Ubar, l, f.ill_conditioned, rank_u);
  if (f.ill_conditioned) {
    f.warnings.push_back("hidden rows of a complement basis are rank deficient (ranks " +
                         std::to_string(rank_v) + ", " + std::to_string(rank_u) + ")");
  }
  return f;
}

Matrix lambda_opt(const LambdaFactors& f) { return -f.lambda_V * f.lambda_U.transpose(); }

double certificate_residual(const LowRankInstance& inst, const MaskMatrix& mask) {
  const LambdaFactors f = build_lambda_factors(inst, mask);
  const int l = mask.block_index();
  const int h = inst.n - l;
  if (inst.k == 0 || h == 0) return 0.0;
  const Matrix Vb = hidden_rows(inst.Vbar, l);
  const Matrix Ub = hidden_rows(inst.Ubar, l);
  const Matrix Vpb = hidden_rows(inst.Vperp, l);
  const Matrix Upb = hidden_rows(inst.Uperp, l);
  const Matrix block = Vb * Ub.transpose() + Vpb * lambda_opt(f) * Upb.transpose();
  return block.norm();
}

Matrix build_q(const Matrix& Vperp, int l) {
  const auto n = static_cast<int>(Vperp.rows());
  if (l < 0 || l > n) throw ParameterError("build_q: l outside [0, n]");
  const Matrix B = hidden_rows(Vperp, l);
  const Matrix D = B * B.transpose();
  const int h = n - l;
  if (h == 0) return Matrix(0, 0);
  Eigen::LDLT<Matrix> ldlt(D);
  const double rcond = ldlt.rcond();
  if (ldlt.info() != Eigen::Success || !(rcond > 1e-12)) {
    throw SingularityError("build_q: masked projector block is singular (rcond=" +
                           std::to_string(rcond) + ")");
  }
  Matrix Q = ldlt.solve(Matrix::Identity(h, h)) - Matrix::Identity(h, h);
  return 0.5 * (Q + Q.transpose());
}

Matrix build_q_from_factor(const Matrix& Vbar, int l) {
  const auto n = static_cast<int>(Vbar.rows());
  if (l < 0 || l > n) throw ParameterError("build_q_from_factor: l outside [0, n]");
  const int h = n - l;
  if (h == 0) return Matrix(0, 0);
  const Matrix Vb = hidden_rows(Vbar, l);
  const Matrix D = Matrix::Identity(h, h) - Vb * Vb.transpose();
  Eigen::LDLT<Matrix> ldlt(D);
  const double rcond = ldlt.rcond();
  if (ldlt.info() != Eigen::Success || !(rcond > 1e-12)) {
    throw SingularityError("build_q_from_factor: masked projector block is singular (rcond=" +
                           std::to_string(rcond) + ")");
  }
  Matrix Q = ldlt.solve(Matrix::Identity(h, h)) - Matrix::Identity(h, h);
  return 0.5 * (Q + Q.transpose());
}

double lambda_max_symmetric(const Matrix& S) {
  if (S.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(S, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

CertificateReport check_equivalence(const LowRankInstance& inst, const MaskMatrix& mask) {
  const LambdaFactors f = build_lambda_factors(inst, mask);
  CertificateReport r;
  r.ill_conditioned = f.ill_conditioned;
  if (inst.k > 0 && f.lambda_V.rows() > 0) {
    r.lambda_max_V = lambda_max_symmetric(f.lambda_V.transpose() * f.lambda_V);
    r.lambda_max_U = lambda_max_symmetric(f.lambda_U.transpose() * f.lambda_U);
    // Nonzero spectrum of L_V^T L_V L_U^T L_U equals that of S S^T, S = L_U L_V^T.
    const Matrix S = f.lambda_U * f.lambda_V.transpose();
    r.lambda_max_product = std::max(0.0, lambda_max_symmetric(S * S.transpose()));
  }
  r.certificate_residual = certificate_residual(inst, mask);
  r.equivalent = r.lambda_max_product <= 1.0 + kEquivalenceTolerance;
  r.boundary = std::abs(r.lambda_max_product - 1.0) <= kEquivalenceTolerance;
  r.sufficient_only = r.lambda_max_V * r.lambda_max_U <= 1.0;
  return r;
}

}  // namespace cinfmc
