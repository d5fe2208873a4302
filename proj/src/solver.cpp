#include "cinfmc/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cinfmc/errors.hpp"

namespace cinfmc {

namespace {

Vector singular_values(const Matrix& X) {
  if (X.size() == 0) return Vector();
  return Eigen::BDCSVD<Matrix>(X).singularValues();
}

// Overwrite observed entries with the data.
void project_onto_data(Matrix& Z, const Matrix& Y, const Matrix& mask) {
  Z = mask.cwiseProduct(Y) + (Matrix::Ones(Z.rows(), Z.cols()) - mask).cwiseProduct(Z);
}

}  // namespace

void SolveOptions::validate() const {
  if (max_iters < 1) throw ParameterError("max_iters must be >= 1");
  if (!(step > 0.0)) throw ParameterError("step must be positive");
  if (!(tol_primal > 0.0) || !(tol_rel_change > 0.0)) {
    throw ParameterError("tolerances must be positive");
  }
  if (!(success_rmse_rel > 0.0)) throw ParameterError("success_rmse_rel must be positive");
  if (objective_check_every < 1) throw ParameterError("objective_check_every must be >= 1");
}

nlohmann::json SolveReport::to_json(bool include_matrix) const {
  nlohmann::json j{{"iterations", iterations},
                   {"converged", converged},
                   {"objective", objective},
                   {"feasibility_residual", feasibility_residual},
                   {"primal_residual", primal_residual}};
  if (rmse) {
    j["rmse"] = *rmse;
    j["rmse_rel"] = *rmse_rel;
    j["success"] = success;
  } else {
    j["rmse"] = nullptr;
    j["rmse_rel"] = nullptr;
    j["success"] = nullptr;
  }
  if (include_matrix) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < X_hat.rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index c = 0; c < X_hat.cols(); ++c) row.push_back(X_hat(i, c));
      rows.push_back(std::move(row));
    }
    j["X_hat"] = std::move(rows);
  }
  return j;
}

double ell_p_star(const Matrix& X, double p) {
  if (!(p >= 0.0)) throw ParameterError("ell_p_star: p must be nonnegative");
  const Vector s = singular_values(X);
  if (s.size() == 0) return 0.0;
  const double smax = s.maxCoeff();
  if (p == 0.0) {
    if (smax == 0.0) return 0.0;
    return static_cast<double>((s.array() > 1e-8 * smax).count());
  }
  if (p == 1.0) return s.sum();
  return std::pow(s.array().pow(p).sum(), 1.0 / p);
}

double nuclear_norm(const Matrix& X) { return ell_p_star(X, 1.0); }

Matrix svt(const Matrix& X, double tau) {
  if (!(tau >= 0.0)) throw ParameterError("svt: tau must be nonnegative");
  if (X.size() == 0) return X;
  Eigen::BDCSVD<Matrix> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector shrunk = (svd.singularValues().array() - tau).max(0.0).matrix();
  Eigen::Index r = 0;
  while (r < shrunk.size() && shrunk(r) > 0.0) ++r;
  if (r == 0) return Matrix::Zero(X.rows(), X.cols());
  return svd.matrixU().leftCols(r) * shrunk.head(r).asDiagonal() *
         svd.matrixV().leftCols(r).transpose();
}

double rmse(const Matrix& X_hat, const Matrix& X_sol) {
  if (X_hat.rows() != X_sol.rows() || X_hat.cols() != X_sol.cols()) {
    throw ParameterError("rmse: dimension mismatch");
  }
  return (X_hat - X_sol).norm();
}

SolveReport complete_nuclear(const Matrix& Y, const MaskMatrix& mask, const SolveOptions& opts,
                             const LowRankInstance* truth) {
  opts.validate();
  const int n = mask.n();
  if (Y.rows() != n || Y.cols() != n) throw ParameterError("complete_nuclear: Y size mismatch");
  const Matrix& M = mask.entries();
  if ((Y - M.cwiseProduct(Y)).cwiseAbs().maxCoeff() != 0.0) {
    throw ParameterError("complete_nuclear: Y has nonzero entries off the mask");
  }
  if (truth && truth->n != n) throw ParameterError("complete_nuclear: truth size mismatch");

  const double y_norm = Y.norm();
  Matrix Z = Y;
  Matrix U = Matrix::Zero(n, n);
  Matrix X(n, n);

  Matrix best = Z;
  double best_obj = nuclear_norm(Z);

  SolveReport rep;
  double primal = 0.0;
  int it = 0;
  for (it = 1; it <= opts.max_iters; ++it) {
    X = svt(Z - U, opts.step);
    Matrix Z_next = X + U;
    project_onto_data(Z_next, Y, M);
    U += X - Z_next;

    primal = (X - Z_next).norm();
    const double change = (Z_next - Z).norm() / std::max(1.0, Z.norm());
    Z = std::move(Z_next);

    if (primal <= opts.tol_primal * (1.0 + y_norm) && change <= opts.tol_rel_change) {
      rep.converged = true;
      break;
    }
    if (it % opts.objective_check_every == 0) {
      const double obj = nuclear_norm(Z);
      if (obj < best_obj) {
        best_obj = obj;
        best = Z;
      }
    }
  }

  if (rep.converged) {
    rep.X_hat = std::move(Z);
    rep.objective = nuclear_norm(rep.X_hat);
  } else {
    const double obj = nuclear_norm(Z);
    if (obj < best_obj) {
      best_obj = obj;
      best = std::move(Z);
    }
    rep.X_hat = std::move(best);
    rep.objective = best_obj;
    it = opts.max_iters;
  }
  rep.iterations = it;
  rep.primal_residual = primal;
  rep.feasibility_residual = (M.cwiseProduct(rep.X_hat) - Y).norm();

  if (truth) {
    const double err = rmse(rep.X_hat, truth->X_sol);
    const double ref = truth->X_sol.norm();
    rep.rmse = err;
    rep.rmse_rel = ref > 0.0 ? err / ref : err;
    rep.success = *rep.rmse_rel <= opts.success_rmse_rel;
  }
  return rep;
}

}  // namespace cinfmc
