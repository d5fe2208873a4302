#pragma once

// Closed-form spectral laws for products of Haar-rotated projectors.
//
// Notation: beta = k/n is the zero fraction of V = Vperp Vperp^T, eta = l/n
// the zero fraction of the second projector. Dtilde = V U, D is the hidden
// (n-l) x (n-l) block of V, and Q = D^{-1} - I.

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace cinfmc {

using Complex = std::complex<double>;

struct SpectralParams {
  double beta = 0.0;
  double eta = 0.0;
  double x_l = 0.0;  ///< lower bulk edge
  double x_u = 0.0;  ///< upper bulk edge
  double x_c = 0.0;  ///< branch switch point beta + eta - 2 beta eta

  /// Requires beta, eta in [0, 1]; throws ParameterError otherwise.
  static SpectralParams make(double beta, double eta);
};

struct Atom {
  double location = 0.0;
  double mass = 0.0;
};

/// Atoms plus an absolutely continuous part supported on [support_lo, support_hi].
struct Density {
  std::vector<Atom> atoms;
  double support_lo = 0.0;
  double support_hi = 0.0;
  std::function<double(double)> bulk;

  double atom_mass() const;
  /// Integral of the bulk over [a, b] intersected with the support.
  double bulk_mass(double a, double b) const;
  double bulk_mass() const { return bulk_mass(support_lo, support_hi); }
  double total_mass() const { return atom_mass() + bulk_mass(); }

  /// {atoms: [[x, mass]...], support: [a, b], samples: [[x, f(x)]...]}
  nlohmann::json to_json(int samples = 200) const;
};

/// S-transform of a projector law with zero fraction gamma: (z+1)/(z+1-gamma).
Complex s_projector(Complex z, double gamma);

/// S-transform of Dtilde: product of the two projector S-transforms.
Complex s_dtilde(Complex z, double beta, double eta);

/// Stieltjes transform of the Dtilde law. For Im z >= 0 the sign in front
/// of the (principal) square root follows the sign of the radicand's
/// imaginary part; a real radicand takes the upper half-plane limit. The
/// lower half-plane is filled by conjugate symmetry.
Complex g_dtilde(Complex z, double beta, double eta);

/// Value of the quadratic that g_dtilde solves:
/// G^2 (z^3 - z^2) - G (z^2 - z (beta + eta)) - beta eta.
Complex g_dtilde_residual(Complex G, Complex z, double beta, double eta);

/// R-transform of Dtilde at w, recovered from the S-transform by iterating
/// r <- 1 / S(w r) from r = mean of the law.
Complex r_dtilde(Complex w, double beta, double eta, int max_iters = 10000,
                 double tol = 1e-15);

/// -Im G(x + i eps) / pi, clamped at zero.
double stieltjes_invert(const std::function<Complex(Complex)>& G, double x,
                        double eps = 1e-6);

Density density_dtilde(const SpectralParams& p);
/// Law of D (equivalently of Dbar). Requires eta < 1.
Density density_d(const SpectralParams& p);
/// Law of Q = D^{-1} - I. Requires beta < eta < 1.
Density density_q(const SpectralParams& p);

/// Right edge of the Q law, 1/x_l - 1. Requires beta < eta.
double lambda_max_q_theory(const SpectralParams& p);

}  // namespace cinfmc
