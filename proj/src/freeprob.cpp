#include "cinfmc/freeprob.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "cinfmc/errors.hpp"

namespace cinfmc {

namespace {

constexpr double kPi = std::numbers::pi;

void require_unit_interval(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw ParameterError(std::string(name) + "=" + std::to_string(v) + " outside [0, 1]");
  }
}

void require_open_unit_interval(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) {
    throw ParameterError(std::string(name) + "=" + std::to_string(v) + " outside (0, 1)");
  }
}

// Dtilde bulk without the support test; callers clip to [x_l, x_u].
double dtilde_bulk_raw(double x, double beta, double eta) {
  const double s = beta + eta;
  const double rad = -(x - s) * (x - s) - 4.0 * beta * eta * (x - 1.0);
  const double den = 2.0 * kPi * (x - x * x);
  if (rad <= 0.0 || den <= 0.0) return 0.0;
  return std::sqrt(rad) / den;
}

}  // namespace

SpectralParams SpectralParams::make(double beta, double eta) {
  require_unit_interval(beta, "beta");
  require_unit_interval(eta, "eta");
  SpectralParams p;
  p.beta = beta;
  p.eta = eta;
  p.x_c = beta + eta - 2.0 * beta * eta;
  const double disc = std::max(p.x_c * p.x_c - (beta - eta) * (beta - eta), 0.0);
  const double root = std::sqrt(disc);
  p.x_l = std::max(p.x_c - root, 0.0);
  p.x_u = std::min(p.x_c + root, 1.0);
  return p;
}

double Density::atom_mass() const {
  double total = 0.0;
  for (const auto& a : atoms) total += a.mass;
  return total;
}

double Density::bulk_mass(double a, double b) const {
  const double lo = std::max(a, support_lo);
  const double hi = std::min(b, support_hi);
  if (!(hi > lo) || !bulk) return 0.0;
  // x = lo + (hi - lo)(1 - cos t)/2 absorbs square-root zeros and
  // inverse-square-root poles at either end of the interval.
  const double half = 0.5 * (hi - lo);
  auto integrand = [&](double t) {
    const double x = lo + half * (1.0 - std::cos(t));
    return bulk(x) * half * std::sin(t);
  };
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(integrand, 0.0, kPi, 25,
                                                                       1e-12);
}

nlohmann::json Density::to_json(int samples) const {
  nlohmann::json j;
  j["atoms"] = nlohmann::json::array();
  for (const auto& a : atoms) j["atoms"].push_back({a.location, a.mass});
  j["support"] = {support_lo, support_hi};
  j["samples"] = nlohmann::json::array();
  if (samples >= 2 && bulk) {
    for (int i = 0; i < samples; ++i) {
      const double x = support_lo + (support_hi - support_lo) * i / (samples - 1);
      j["samples"].push_back({x, bulk(x)});
    }
  }
  return j;
}

Complex s_projector(Complex z, double gamma) {
  const Complex den = z + 1.0 - gamma;
  if (den == Complex(0.0, 0.0)) throw PoleError("s_projector: pole at z = gamma - 1");
  return (z + 1.0) / den;
}

Complex s_dtilde(Complex z, double beta, double eta) {
  return s_projector(z, beta) * s_projector(z, eta);
}

Complex g_dtilde(Complex z, double beta, double eta) {
  if (z == Complex(0.0, 0.0) || z == Complex(1.0, 0.0)) {
    throw PoleError("g_dtilde: pole at z in {0, 1}");
  }
  if (z.imag() < 0.0) return std::conj(g_dtilde(std::conj(z), beta, eta));

  const double s = beta + eta;
  const double x_c = beta + eta - 2.0 * beta * eta;
  const Complex a = z - s;
  Complex rad = a * a + 4.0 * beta * eta * (z - 1.0);

  double sign = 0.0;
  if (z.imag() > 0.0) {
    sign = rad.imag() >= 0.0 ? 1.0 : -1.0;
  } else {
    // On the real axis take the limit from the upper half-plane: there
    // Im(rad) has the sign of x - x_c.
    const double dir = z.real() - x_c;
    rad = Complex(rad.real(), std::copysign(0.0, dir));
    sign = dir >= 0.0 ? 1.0 : -1.0;
  }
  return (a + sign * std::sqrt(rad)) / (2.0 * (z * z - z));
}

Complex g_dtilde_residual(Complex G, Complex z, double beta, double eta) {
  return G * G * (z * z * z - z * z) - G * (z * z - z * (beta + eta)) - beta * eta;
}

Complex r_dtilde(Complex w, double beta, double eta, int max_iters, double tol) {
  Complex r = (1.0 - beta) * (1.0 - eta);
  for (int it = 0; it < max_iters; ++it) {
    const Complex next = 1.0 / s_dtilde(w * r, beta, eta);
    if (std::abs(next - r) <= tol * std::max(1.0, std::abs(next))) return next;
    r = next;
  }
  throw std::runtime_error("r_dtilde: fixed-point iteration did not converge");
}

double stieltjes_invert(const std::function<Complex(Complex)>& G, double x, double eps) {
  if (!(eps > 0.0)) throw ParameterError("stieltjes_invert: eps must be positive");
  return std::max(0.0, -G(Complex(x, eps)).imag() / kPi);
}

Density density_dtilde(const SpectralParams& p) {
  require_open_unit_interval(p.beta, "beta");
  require_open_unit_interval(p.eta, "eta");
  Density d;
  d.atoms = {{0.0, std::max(p.beta, p.eta)}, {1.0, std::max(1.0 - (p.beta + p.eta), 0.0)}};
  d.support_lo = p.x_l;
  d.support_hi = p.x_u;
  d.bulk = [beta = p.beta, eta = p.eta, lo = p.x_l, hi = p.x_u](double x) {
    if (x < lo || x > hi) return 0.0;
    return dtilde_bulk_raw(x, beta, eta);
  };
  return d;
}

Density density_d(const SpectralParams& p) {
  require_open_unit_interval(p.beta, "beta");
  if (!(p.eta < 1.0)) throw DegenerateParameter("density_d: eta must be < 1");
  require_open_unit_interval(p.eta, "eta");
  const double scale = 1.0 / (1.0 - p.eta);
  Density d;
  d.atoms = {{0.0, (std::max(p.beta, p.eta) - p.eta) * scale},
             {1.0, std::max(1.0 - (p.beta + p.eta), 0.0) * scale}};
  d.support_lo = p.x_l;
  d.support_hi = p.x_u;
  d.bulk = [beta = p.beta, eta = p.eta, lo = p.x_l, hi = p.x_u, scale](double x) {
    if (x < lo || x > hi) return 0.0;
    return dtilde_bulk_raw(x, beta, eta) * scale;
  };
  return d;
}

Density density_q(const SpectralParams& p) {
  require_open_unit_interval(p.beta, "beta");
  if (!(p.eta < 1.0)) throw DegenerateParameter("density_q: eta must be < 1");
  require_open_unit_interval(p.eta, "eta");
  if (p.beta > p.eta) throw AssumptionViolated("density_q: requires beta <= eta");
  if (p.x_l <= 0.0) {
    throw DegenerateParameter("density_q: x_l = 0 (beta = eta) gives unbounded support");
  }
  const double s = p.beta + p.eta;
  Density d;
  d.atoms = {{0.0, std::max(1.0 - s, 0.0) / (1.0 - p.eta)}};
  d.support_lo = 1.0 / p.x_u - 1.0;
  d.support_hi = 1.0 / p.x_l - 1.0;
  d.bulk = [beta = p.beta, eta = p.eta, s, lo = d.support_lo, hi = d.support_hi](double x) {
    if (x < lo || x > hi || x <= 0.0) return 0.0;
    const double t = 1.0 - (x + 1.0) * s;
    const double rad = -t * t + 4.0 * beta * eta * x * (x + 1.0);
    if (rad <= 0.0) return 0.0;
    return std::sqrt(rad) / (2.0 * kPi * x * (x + 1.0) * (1.0 - eta));
  };
  return d;
}

double lambda_max_q_theory(const SpectralParams& p) {
  if (p.beta > p.eta) throw AssumptionViolated("lambda_max_q_theory: requires beta < eta");
  if (p.x_l <= 0.0) throw DegenerateParameter("lambda_max_q_theory: x_l = 0, edge is infinite");
  return 1.0 / p.x_l - 1.0;
}

}  // namespace cinfmc
