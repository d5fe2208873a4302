#include "cinfmc/randmat.hpp"

#include <string>

#include "cinfmc/errors.hpp"

namespace cinfmc {

namespace {

Matrix gaussian_matrix(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(rows, cols);
  // Column-major fill keeps the draw order independent of Eigen internals.
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) g(i, j) = normal(rng);
  return g;
}

// Thin Q of a Householder QR with sign(R_jj) folded into column j.
Matrix sign_fixed_thin_q(const Matrix& a) {
  const auto rows = a.rows();
  const auto cols = a.cols();
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < cols; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

}  // namespace

MaskMatrix::MaskMatrix(Matrix entries, int l) : entries_(std::move(entries)), l_(l) {
  m_ = static_cast<long long>(entries_.sum() + 0.5);
}

MaskMatrix MaskMatrix::from_entries(Matrix entries) {
  if (entries.rows() != entries.cols() || entries.rows() == 0) {
    throw ParameterError("mask must be a non-empty square matrix");
  }
  for (Eigen::Index j = 0; j < entries.cols(); ++j)
    for (Eigen::Index i = 0; i < entries.rows(); ++i) {
      const double v = entries(i, j);
      if (v != 0.0 && v != 1.0) throw ParameterError("mask entries must be 0 or 1");
    }
  return MaskMatrix(std::move(entries), -1);
}

Matrix MaskMatrix::hidden_selector() const {
  if (l_ < 0) throw ParameterError("hidden_selector requires a block mask");
  const int h = n() - l_;
  Matrix sel = Matrix::Zero(n(), h);
  for (int j = 0; j < h; ++j) sel(l_ + j, j) = 1.0;
  return sel;
}

Matrix sample_haar_basis(int n, int d, Rng& rng) {
  if (n < 1 || d < 1 || d > n) {
    throw ParameterError("sample_haar_basis: need 1 <= d <= n, got n=" + std::to_string(n) +
                         " d=" + std::to_string(d));
  }
  return sign_fixed_thin_q(gaussian_matrix(n, d, rng));
}

Matrix complete_basis(const Matrix& basis, Rng& rng) {
  const auto n = static_cast<int>(basis.rows());
  const auto d = static_cast<int>(basis.cols());
  if (d > n) throw ParameterError("complete_basis: more columns than rows");
  if (d == n) return Matrix(n, 0);
  if (d == 0) return sample_haar_basis(n, n, rng);

  Matrix g = gaussian_matrix(n, n - d, rng);
  // Two projection passes: one pass loses orthogonality at the 1e-8 level
  // when the Gaussian block is nearly inside span(basis).
  for (int pass = 0; pass < 2; ++pass) g -= basis * (basis.transpose() * g);
  Matrix q = sign_fixed_thin_q(g);
  q -= basis * (basis.transpose() * q);
  return sign_fixed_thin_q(q);
}

MaskMatrix make_block_mask(int n, int l) {
  if (n < 1) throw ParameterError("make_block_mask: n must be positive");
  if (l < 0 || l > n) {
    throw ParameterError("make_block_mask: l=" + std::to_string(l) + " outside [0, " +
                         std::to_string(n) + "]");
  }
  Matrix e = Matrix::Ones(n, n);
  e.bottomRightCorner(n - l, n - l).setZero();
  return MaskMatrix(std::move(e), l);
}

LowRankInstance make_lowrank(int n, int k, GenerationMode mode, SigmaSpec sigma_spec,
                             Rng& rng) {
  if (n < 1) throw ParameterError("make_lowrank: n must be positive");
  if (k < 0 || k > n) {
    throw ParameterError("make_lowrank: k=" + std::to_string(k) + " outside [0, " +
                         std::to_string(n) + "]");
  }
  LowRankInstance inst;
  inst.n = n;
  inst.k = k;
  inst.mode = mode;

  inst.Ubar = k > 0 ? sample_haar_basis(n, k, rng) : Matrix(n, 0);
  inst.Uperp = complete_basis(inst.Ubar, rng);
  if (mode == GenerationMode::WorstCase) {
    inst.Vbar = inst.Ubar;
    inst.Vperp = inst.Uperp;
    inst.sigma = Vector::Ones(k);
  } else {
    inst.Vbar = k > 0 ? sample_haar_basis(n, k, rng) : Matrix(n, 0);
    inst.Vperp = complete_basis(inst.Vbar, rng);
    if (sigma_spec == SigmaSpec::RandomPositive) {
      std::uniform_real_distribution<double> unif(0.5, 1.5);
      inst.sigma.resize(k);
      for (int i = 0; i < k; ++i) inst.sigma(i) = unif(rng);
    } else {
      inst.sigma = Vector::Ones(k);
    }
  }
  inst.X_sol = inst.Ubar * inst.sigma.asDiagonal() * inst.Vbar.transpose();
  return inst;
}

Matrix apply_mask(const MaskMatrix& mask, const Matrix& X) {
  if (X.rows() != mask.n() || X.cols() != mask.n()) {
    throw ParameterError("apply_mask: matrix is " + std::to_string(X.rows()) + "x" +
                         std::to_string(X.cols()) + ", mask is " + std::to_string(mask.n()) +
                         "x" + std::to_string(mask.n()));
  }
  return mask.entries().cwiseProduct(X);
}

const char* to_string(GenerationMode mode) {
  return mode == GenerationMode::WorstCase ? "worst-case" : "independent";
}

GenerationMode parse_generation_mode(const std::string& text) {
  if (text == "worst-case" || text == "worstcase" || text == "WorstCase") {
    return GenerationMode::WorstCase;
  }
  if (text == "independent" || text == "Independent") return GenerationMode::Independent;
  throw ParameterError("unknown mode '" + text + "' (expected worst-case or independent)");
}

}  // namespace cinfmc
