#pragma once

#include <optional>

#include <nlohmann/json.hpp>

#include "cinfmc/randmat.hpp"

namespace cinfmc {

struct SolveOptions {
  int max_iters = 2000;
  /// Shrinkage threshold of the singular-value step (inverse ADMM penalty).
  /// Scales with the data: solving c*Y with step c*s reproduces c*X_hat.
  double step = 1.0;
  double tol_primal = 1e-8;
  double tol_rel_change = 1e-10;
  double success_rmse_rel = 1e-4;
  /// Objective of the feasible iterate is tracked every this many
  /// iterations to pick the best iterate on non-convergence.
  int objective_check_every = 25;

  void validate() const;
};

struct SolveReport {
  Matrix X_hat;
  std::optional<double> rmse;
  std::optional<double> rmse_rel;
  int iterations = 0;
  bool converged = false;
  bool success = false;
  double objective = 0.0;            ///< nuclear norm of X_hat
  double feasibility_residual = 0.0;  ///< ||M o X_hat - Y||_F
  double primal_residual = 0.0;       ///< ||X - Z||_F at exit

  nlohmann::json to_json(bool include_matrix = false) const;
};

/// (sum sigma_i^p)^(1/p) over singular values; p = 0 is the numerical rank
/// (singular values above 1e-8 * sigma_max).
double ell_p_star(const Matrix& X, double p);

double nuclear_norm(const Matrix& X);

/// Singular-value soft thresholding U diag(max(sigma - tau, 0)) V^T.
Matrix svt(const Matrix& X, double tau);

/// Frobenius norm of X_hat - X_sol.
double rmse(const Matrix& X_hat, const Matrix& X_sol);

/// min ||X||_* subject to M o X = Y, by ADMM on the split X = Z with Z
/// restricted to the affine set of matrices that agree with Y on the mask.
/// The returned X_hat is the Z iterate, so it matches Y exactly on observed
/// entries.
SolveReport complete_nuclear(const Matrix& Y, const MaskMatrix& mask, const SolveOptions& opts,
                             const LowRankInstance* truth = nullptr);

}  // namespace cinfmc
