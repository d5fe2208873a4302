#pragma once

#include <string>
#include <vector>

namespace cinfmc {

enum class Region { Recoverable, NotRecoverable, Boundary };

struct PTPoint {
  double eta = 0.0;
  double alpha = 0.0;  ///< observed fraction 1 - (1 - eta)^2
  double beta = 0.0;
  Region region = Region::Boundary;
};

inline constexpr double kBoundaryTolerance = 1e-9;

/// Worst-case phase transition 1/2 - sqrt(eta - eta^2), eta in (0, 1).
double beta_wc(double eta);

/// Same curve in observed-fraction coordinates:
/// 1/2 - sqrt(sqrt(1 - alpha) - 1 + alpha), alpha in (0, 1).
double beta_wc_from_alpha(double alpha);

double alpha_from_eta(double eta);

PTPoint classify(double beta, double eta, double tol = kBoundaryTolerance);

/// One point per grid value, beta set to beta_wc(eta) and region Boundary.
std::vector<PTPoint> pt_curve(const std::vector<double>& eta_grid);

const char* to_string(Region r);

}  // namespace cinfmc
