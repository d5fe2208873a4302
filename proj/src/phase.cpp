#include "cinfmc/phase.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cinfmc/errors.hpp"

namespace cinfmc {

double beta_wc(double eta) {
  if (!(eta > 0.0 && eta < 1.0)) {
    throw ParameterError("beta_wc: eta=" + std::to_string(eta) + " outside (0, 1)");
  }
  return 0.5 - std::sqrt(eta - eta * eta);
}

double beta_wc_from_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ParameterError("beta_wc_from_alpha: alpha=" + std::to_string(alpha) +
                         " outside (0, 1)");
  }
  // sqrt(1-alpha) - 1 + alpha = eta - eta^2 >= 0; clamp rounding below zero.
  const double inner = std::max(std::sqrt(1.0 - alpha) - 1.0 + alpha, 0.0);
  return 0.5 - std::sqrt(inner);
}

double alpha_from_eta(double eta) { return 1.0 - (1.0 - eta) * (1.0 - eta); }

PTPoint classify(double beta, double eta, double tol) {
  if (!(beta >= 0.0 && beta < 1.0)) {
    throw ParameterError("classify: beta=" + std::to_string(beta) + " outside [0, 1)");
  }
  PTPoint p;
  p.eta = eta;
  p.alpha = alpha_from_eta(eta);
  p.beta = beta;
  const double wc = beta_wc(eta);
  if (beta > 0.5) {
    p.region = Region::NotRecoverable;
  } else if (std::abs(beta - wc) <= tol) {
    p.region = Region::Boundary;
  } else {
    p.region = beta < wc ? Region::Recoverable : Region::NotRecoverable;
  }
  return p;
}

std::vector<PTPoint> pt_curve(const std::vector<double>& eta_grid) {
  std::vector<PTPoint> out;
  out.reserve(eta_grid.size());
  for (double eta : eta_grid) {
    PTPoint p;
    p.eta = eta;
    p.alpha = alpha_from_eta(eta);
    p.beta = beta_wc(eta);
    p.region = Region::Boundary;
    out.push_back(p);
  }
  return out;
}

const char* to_string(Region r) {
  switch (r) {
    case Region::Recoverable:
      return "recoverable";
    case Region::NotRecoverable:
      return "not-recoverable";
    case Region::Boundary:
      return "boundary";
  }
  return "unknown";
}

}  // namespace cinfmc
