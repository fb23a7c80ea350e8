// Common numeric types, error classes and small helpers shared by every
// starwalk header.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace starwalk {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// Tolerances used across the library. Each one is tied to a specific check.
namespace tol {
inline constexpr double kSpecUnitarity = 1e-12;      // vertex scattering matrices
inline constexpr double kHubIdentity = 1e-12;        // hub coefficient identities
inline constexpr double kOperatorUnitarity = 1e-10;  // assembled time-step operators
inline constexpr double kStateNorm = 1e-10;
inline constexpr double kEigenResidual = 1e-9;
inline constexpr double kCluster = 1e-7;
inline constexpr double kBoundRank = 1e-8;
}  // namespace tol

/// Malformed or inconsistent subgraph description.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed or produced a result outside its contract.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The input contradicts a structural property the model guarantees
/// (e.g. two hub-contacting directions in one eigenspace).
class ModelViolation : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Search planning was asked for something that cannot produce a speedup.
class PlanningError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Wraps an angle into (-pi, pi].
inline double wrap_angle(double a) {
  double r = std::remainder(a, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

/// Frobenius norm of U^dagger U - I.
inline double unitarity_residual(const Matrix& u) {
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm();
}

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("loglog_slope: need two or more matched samples");
  double mx = 0, my = 0;
  const auto n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

/// Logarithmically spaced grid from `hi` down to `lo` (inclusive), `n` points.
inline std::vector<double> log_grid(double hi, double lo, int n) {
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double f = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    g.push_back(std::exp(std::log(hi) + f * (std::log(lo) - std::log(hi))));
  }
  return g;
}

}  // namespace starwalk
