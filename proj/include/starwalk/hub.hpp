// Hub vertex coefficients.
//
// The hub maps |j,0> -> r|0,j> + t sum_{k != j} |0,k>. After collapsing the
// N - M unmarked edges into |in>/|out> and the M marked edges into |0,1>/|1,0>
// only three numbers remain:
//   U|in>  = R_L |out> + T |0,1>
//   U|1,0> = R_R |0,1> + T |out>
// The standard diffusive hub is r = -1 + 2/N, t = 2/N. The generalized family
// is parametrized by two phases (x, y) with cos(x - y) < 1; x = pi, y = 0
// recovers the standard hub.
#pragma once

#include "starwalk/core.hpp"

#include <algorithm>
#include <cstdint>

namespace starwalk {

/// epsilon = M / N kept as an exact ratio alongside its floating value.
struct EpsilonRatio {
  std::int64_t M = 0;
  std::int64_t N = 1;
  [[nodiscard]] double value() const { return static_cast<double>(M) / static_cast<double>(N); }
};

struct HubCoefficients {
  Complex R_L;
  Complex R_R;
  Complex T;
};

/// The hub as an analytic function of epsilon, for one copy of G.
struct HubFamily {
  double x = kPi;
  double y = 0.0;

  [[nodiscard]] bool is_standard() const { return x == kPi && y == 0.0; }

  /// Coefficients at a (possibly complex) epsilon. `s` is the chosen branch of
  /// sqrt(eps - eps^2); continuing it is the caller's job.
  [[nodiscard]] HubCoefficients at(Complex eps, Complex s) const {
    if (is_standard()) return {1.0 - 2.0 * eps, -1.0 + 2.0 * eps, 2.0 * s};
    const double cxy = std::cos(x - y);
    const double sxy = std::sin(x - y);
    const Complex d = std::sqrt(1.0 - 4.0 * sxy * sxy * s * s);
    const Complex ex = std::polar(1.0, x), ey = std::polar(1.0, y);
    return {(1.0 - 2.0 * eps) * (ex - 2.0 * cxy * ey) / d, (1.0 - 2.0 * eps) * ex / d,
            -2.0 * cxy * s * ey / d};
  }

  [[nodiscard]] HubCoefficients at(double eps) const {
    return at(Complex(eps, 0.0), Complex(std::sqrt(std::max(0.0, eps - eps * eps)), 0.0));
  }

  /// Left-side reflection at epsilon = 0.
  [[nodiscard]] Complex left_reflection0() const { return at(0.0).R_L; }

  /// Coefficient of sqrt(eps) in T, i.e. the hub part of U_1.
  [[nodiscard]] Complex transmission_slope() const {
    return is_standard() ? Complex(2.0, 0.0) : -2.0 * std::cos(x - y) * std::polar(1.0, y);
  }
};

/// Hub for a concrete graph with N hub edges, M of them leading to copies of G.
struct HubModel {
  std::int64_t N = 2;
  std::int64_t M = 1;
  EpsilonRatio epsilon;
  double phase_x = kPi;
  double phase_y = 0.0;
  Complex r;
  Complex t;
  HubCoefficients collapsed;

  [[nodiscard]] HubFamily family() const { return {phase_x, phase_y}; }
  [[nodiscard]] bool generalized() const { return !family().is_standard(); }
};

/// Builds the hub coefficients. x = pi, y = 0 selects the standard hub.
/// Throws std::invalid_argument when M >= N or cos(x - y) >= 1.
inline HubModel hub_coefficients(std::int64_t N, std::int64_t M, double x = kPi, double y = 0.0) {
  if (M < 1) throw std::invalid_argument("hub_coefficients: M must be at least 1");
  if (M >= N) throw std::invalid_argument("hub_coefficients: need M < N");
  if (!(std::cos(x - y) < 1.0))
    throw std::invalid_argument("hub_coefficients: generalized hub needs cos(x - y) < 1");

  HubModel h;
  h.N = N;
  h.M = M;
  h.epsilon = {M, N};
  h.phase_x = x;
  h.phase_y = y;
  const double n = static_cast<double>(N), m = static_cast<double>(M);
  const double e1 = 1.0 / n;
  if (h.family().is_standard()) {
    const double e = h.epsilon.value();
    h.r = -1.0 + 2.0 * e1;
    h.t = 2.0 * e1;
    h.collapsed = {1.0 - 2.0 * e, -1.0 + 2.0 * e, 2.0 * std::sqrt(e - e * e)};
  } else {
    const double cxy = std::cos(x - y), sxy = std::sin(x - y);
    const double d = std::sqrt(1.0 - 4.0 * sxy * sxy * (e1 - e1 * e1));
    h.r = (1.0 - 2.0 * e1) / d * std::polar(1.0, x);
    h.t = -2.0 * cxy * e1 / d * std::polar(1.0, y);
    h.collapsed = {h.r + (n - m - 1.0) * h.t, h.r + (m - 1.0) * h.t, h.t * std::sqrt(m * (n - m))};
  }
  return h;
}

/// Residuals of every hub identity; all should vanish to ~1e-12.
struct HubResiduals {
  double norm_condition;        // |r|^2 + (N-1)|t|^2 - 1
  double orthogonality;         // 2 Re(conj(r) t) + (N-2)|t|^2
  double right_side;            // |R_R|^2 + |T|^2 - 1
  double left_side;             // |R_L|^2 + |T|^2 - 1
  double determinant_identity;  // |T^2 - R_R R_L - e^{2iy}|

  [[nodiscard]] double max() const {
    return std::max({std::abs(norm_condition), std::abs(orthogonality), std::abs(right_side),
                     std::abs(left_side), determinant_identity});
  }
};

inline HubResiduals hub_residuals(const HubModel& h) {
  const double n = static_cast<double>(h.N);
  const auto& c = h.collapsed;
  return {std::norm(h.r) + (n - 1.0) * std::norm(h.t) - 1.0,
          2.0 * (std::conj(h.r) * h.t).real() + (n - 2.0) * std::norm(h.t),
          std::norm(c.R_R) + std::norm(c.T) - 1.0,
          std::norm(c.R_L) + std::norm(c.T) - 1.0,
          std::abs(c.T * c.T - c.R_R * c.R_L - std::polar(1.0, 2.0 * h.phase_y))};
}

}  // namespace starwalk
