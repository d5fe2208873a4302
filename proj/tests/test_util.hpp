#pragma once

// Test-only oracles. Nothing here calls into the code under test.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace testutil {

inline double orthonormality_error(const Eigen::MatrixXd& Q) {
  const auto d = Q.cols();
  return (Q.transpose() * Q - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff();
}

// Jacobi SVD: a different algorithm from the divide-and-conquer SVD the
// library uses.
inline Eigen::VectorXd jacobi_singular_values(const Eigen::MatrixXd& X) {
  return Eigen::JacobiSVD<Eigen::MatrixXd>(X).singularValues();
}

inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     int iters = 200) {
  double flo = f(lo);
  for (int i = 0; i < iters; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Composite midpoint rule after x = a + (b-a)(1-cos t)/2.
inline double cos_midpoint(const std::function<double(double)>& f, double a, double b,
                           int panels = 200000) {
  const double half = 0.5 * (b - a);
  const double h = M_PI / panels;
  double sum = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double t = (i + 0.5) * h;
    sum += f(a + half * (1.0 - std::cos(t))) * half * std::sin(t);
  }
  return sum * h;
}

// Two-sample Kolmogorov-Smirnov statistic.
inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(double(i) / a.size() - double(j) / b.size()));
  }
  return d;
}

inline std::vector<double> sorted_eigenvalues(const Eigen::MatrixXd& S) {
  if (S.size() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S, Eigen::EigenvaluesOnly);
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + S.rows());
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace testutil
