#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cinfmc/randmat.hpp"

namespace cinfmc {

struct LambdaFactors {
  Matrix lambda_V;  ///< (n-k) x k
  Matrix lambda_U;  ///< (n-k) x k
  /// Set when (I^(l))^T Vperp or (I^(l))^T Uperp drops rank below the
  /// pseudo-inverse cutoff.
  bool ill_conditioned = false;
  std::vector<std::string> warnings;
};

/// Finite-n verdict on whether nuclear-norm minimisation recovers the
/// instance exactly from the block mask.
struct CertificateReport {
  double lambda_max_product = 0.0;  ///< lambda_max(L_V^T L_V L_U^T L_U)
  double lambda_max_V = 0.0;        ///< lambda_max(L_V^T L_V)
  double lambda_max_U = 0.0;        ///< lambda_max(L_U^T L_U)
  double certificate_residual = 0.0;
  bool equivalent = false;       ///< lambda_max_product <= 1 + tol
  bool boundary = false;         ///< |lambda_max_product - 1| <= tol
  bool sufficient_only = false;  ///< lambda_max_V * lambda_max_U <= 1
  bool ill_conditioned = false;

  nlohmann::json to_json() const;
};

inline constexpr double kPinvRelativeCutoff = 1e-10;
inline constexpr double kEquivalenceTolerance = 1e-9;

/// Moore-Penrose pseudo-inverse with singular values below
/// rel_cutoff * sigma_max treated as zero. `rank` receives the retained count.
Matrix pseudo_inverse(const Matrix& A, double rel_cutoff = kPinvRelativeCutoff,
                      int* rank = nullptr);

/// Lambda_V = pinv((I^(l))^T Vperp) (I^(l))^T Vbar, Lambda_U likewise.
LambdaFactors build_lambda_factors(const LowRankInstance& inst, const MaskMatrix& mask);

/// Lambda_opt = -Lambda_V Lambda_U^T, the explicit dual certificate.
Matrix lambda_opt(const LambdaFactors& f);

/// Frobenius norm of (I^(l))^T (Vbar Ubar^T + Vperp Lambda_opt Uperp^T) I^(l).
double certificate_residual(const LowRankInstance& inst, const MaskMatrix& mask);

/// Q = ((I^(l))^T Vperp Vperp^T I^(l))^{-1} - I, (n-l) x (n-l).
Matrix build_q(const Matrix& Vperp, int l);

/// Same Q from the factor itself, using Vperp Vperp^T = I - Vbar Vbar^T.
/// Avoids materialising the n x (n-k) complement at large n.
Matrix build_q_from_factor(const Matrix& Vbar, int l);

/// Largest eigenvalue of a symmetric matrix; 0 for an empty matrix.
double lambda_max_symmetric(const Matrix& S);

CertificateReport check_equivalence(const LowRankInstance& inst, const MaskMatrix& mask);

}  // namespace cinfmc
