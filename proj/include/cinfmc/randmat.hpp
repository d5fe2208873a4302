#pragma once

#include <cstdint>
#include <random>
#include <string>

#include <Eigen/Dense>

namespace cinfmc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Rng = std::mt19937_64;

/// Block causal-inference mask M^(l).
///
/// Entry (i, j) (1-based) is observed iff min(i, j) <= l: every unit is
/// untreated up to time l, and the trailing (n-l) x (n-l) block is hidden.
/// Masks built from arbitrary 0/1 patterns are accepted by apply_mask and the
/// solver but carry no block structure (block_index() is then -1).
class MaskMatrix {
 public:
  /// Wraps an arbitrary 0/1 square pattern. Throws ParameterError on any
  /// entry other than 0 or 1 or a non-square input.
  static MaskMatrix from_entries(Matrix entries);

  int n() const { return static_cast<int>(entries_.rows()); }
  /// Treatment-time index l, or -1 for a non-block mask.
  int block_index() const { return l_; }
  /// Number of observed entries.
  long long m() const { return m_; }
  const Matrix& entries() const { return entries_; }
  bool observed(int i, int j) const { return entries_(i, j) != 0.0; }

  /// Column selector I^(l) = [0_{l x (n-l)}; I_{n-l}], n x (n-l).
  Matrix hidden_selector() const;

 private:
  friend MaskMatrix make_block_mask(int n, int l);
  MaskMatrix(Matrix entries, int l);

  Matrix entries_;
  int l_ = -1;
  long long m_ = 0;
};

enum class GenerationMode { WorstCase, Independent };
enum class SigmaSpec { UnitOnes, RandomPositive };

/// Ground-truth rank-k matrix X_sol = Ubar diag(sigma) Vbar^T together with
/// orthonormal complements of both factors.
struct LowRankInstance {
  int n = 0;
  int k = 0;
  Matrix Ubar;
  Matrix Vbar;
  Matrix Uperp;
  Matrix Vperp;
  Vector sigma;
  Matrix X_sol;
  GenerationMode mode = GenerationMode::Independent;
};

/// Haar-distributed n x d frame: QR of an i.i.d. N(0,1) matrix with columns
/// sign-normalised by the diagonal of R.
Matrix sample_haar_basis(int n, int d, Rng& rng);

/// Orthonormal basis of the orthogonal complement of the columns of `basis`
/// (n x d, orthonormal). Result is n x (n-d).
Matrix complete_basis(const Matrix& basis, Rng& rng);

MaskMatrix make_block_mask(int n, int l);

/// WorstCase forces Vbar = Ubar (and Vperp = Uperp) with unit singular
/// values regardless of `sigma_spec`. RandomPositive draws sigma uniform on
/// [0.5, 1.5].
LowRankInstance make_lowrank(int n, int k, GenerationMode mode,
                             SigmaSpec sigma_spec, Rng& rng);

/// Hadamard product M o X.
Matrix apply_mask(const MaskMatrix& mask, const Matrix& X);

const char* to_string(GenerationMode mode);
GenerationMode parse_generation_mode(const std::string& text);

}  // namespace cinfmc
