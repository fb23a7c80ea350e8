// Detuning tolerance: what happens to the search when the left eigenvalue
// misses lambda0 by a phase delta.
#pragma once

#include "starwalk/search.hpp"

#include <Eigen/QR>

namespace starwalk {

/// Phase that puts the left eigenvalue at lambda0 e^{i delta}.
inline Tuning detuned_tuning(Complex lambda0, double delta, const HubFamily& family = {}) {
  return tune_left(lambda0 * std::polar(1.0, delta), family);
}

inline double detuned_phase(Complex lambda0, double delta, const HubFamily& family = {}) {
  return detuned_tuning(lambda0, delta, family).phi;
}

/// t = delta^2 / (4 c^2 eps).
inline double tuning_t(double delta, double c, double eps) { return delta * delta / (4.0 * c * c * eps); }

inline double tuning_t(double delta, double c, std::int64_t N, std::int64_t M) {
  return tuning_t(delta, c, static_cast<double>(M) / static_cast<double>(N));
}

/// Success probability of the naive schedule m = pi/(2c sqrt(eps)).
inline double predicted_naive(double t) {
  if (t < 0.0) throw std::invalid_argument("predicted_naive: t must be nonnegative");
  const double s = std::sin(0.5 * kPi * std::sqrt(1.0 + t));
  return s * s / (1.0 + t);
}

/// Success probability of the compensated schedule m = pi/(2c sqrt((1+t) eps)).
inline double predicted_compensated(double t) {
  if (t < 0.0) throw std::invalid_argument("predicted_compensated: t must be nonnegative");
  return 1.0 / (1.0 + t);
}

inline std::int64_t compensated_steps(double c, double t, std::int64_t N, std::int64_t M) {
  const double eps = static_cast<double>(M) / static_cast<double>(N);
  return static_cast<std::int64_t>(std::floor(kPi / (2.0 * c * std::sqrt((1.0 + t) * eps))));
}

// ----------------------------------------------------------- double root

struct DoubleRoot {
  Complex epsilon0;
  double gap = 0.0;  // distance between the two colliding eigenvalues there
  int iterations = 0;
};

namespace detail {

/// Orthonormal basis of the complement of every bound right eigenvector.
/// That complement is invariant under U(eps) for complex eps as well, so the
/// compressed operator has exactly the non-constant eigenvalues.
inline Matrix unbound_basis(const CollapsedModel& model, const HubFamily& family) {
  const auto n = model.dim();
  std::vector<Vector> bound;
  for (const auto& rc : classify_all_right(model, family))
    for (const auto& b : rc.bound_basis) bound.push_back(embed_right(model.basis(), b).amplitudes);
  if (bound.empty()) return Matrix::Identity(n, n);
  Matrix b(n, static_cast<Eigen::Index>(bound.size()));
  for (std::size_t k = 0; k < bound.size(); ++k) b.col(static_cast<Eigen::Index>(k)) = bound[k];
  Eigen::HouseholderQR<Matrix> qr(b);
  const Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  return q.rightCols(n - b.cols());
}

}  // namespace detail

/// Finds the complex epsilon where the two eigenvalues nearest `hint` collide,
/// by driving g(eps) = (a - b)^2 to zero with a secant iteration seeded from a
/// grid over |Re eps|, |Im eps| <= 0.1. Throws NumericalError when no
/// collision is found.
inline DoubleRoot locate_double_root(const CollapsedModel& model, double phi, Complex hint,
                                     const HubFamily& family = {}) {
  const Matrix q = detail::unbound_basis(model, family);
  const Complex phase = std::polar(1.0, phi);
  auto g = [&](Complex eps) {
    const Complex s = std::sqrt(eps - eps * eps);
    const Matrix c = q.adjoint() * model.matrix(family.at(eps, s), phase) * q;
    const auto sys = eigendecompose_general(c);
    const auto idx = detail::nearest(sys.values, hint, 2);
    if (idx.size() < 2) throw NumericalError("locate_double_root: fewer than two non-constant eigenvalues");
    const Complex d = sys.values[idx[0]] - sys.values[idx[1]];
    return d * d;
  };

  constexpr int kGrid = 41;
  constexpr double kRadius = 0.1;
  std::vector<std::pair<double, Complex>> seeds;
  for (int i = 0; i < kGrid; ++i)
    for (int j = 0; j < kGrid; ++j) {
      const Complex e(-kRadius + 2.0 * kRadius * i / (kGrid - 1), -kRadius + 2.0 * kRadius * j / (kGrid - 1));
      seeds.emplace_back(std::abs(g(e)), e);
    }
  std::sort(seeds.begin(), seeds.end(), [](const auto& a, const auto& b) {
    return a.first < b.first || (a.first == b.first && std::abs(a.second) < std::abs(b.second));
  });
  if (seeds.front().first == 0.0) return {seeds.front().second, 0.0, 0};

  std::optional<DoubleRoot> best;
  for (std::size_t k = 0; k < 3 && k < seeds.size(); ++k) {
    Complex e0 = seeds[k].second, e1 = e0 + Complex(1e-4, 1e-4);
    Complex g0 = g(e0), g1 = g(e1);
    int it = 0;
    for (; it < 80; ++it) {
      if (g1 == g0) break;
      const Complex e2 = e1 - g1 * (e1 - e0) / (g1 - g0);
      if (!std::isfinite(e2.real()) || !std::isfinite(e2.imag()) || std::abs(e2) > 2.0 * kRadius) break;
      e0 = e1;
      g0 = g1;
      e1 = e2;
      g1 = g(e1);
      if (std::abs(e1 - e0) < 1e-16 + 1e-14 * std::abs(e1) || g1 == 0.0) break;
    }
    const double gap = std::sqrt(std::abs(g1));
    if (gap < 1e-6 && std::abs(e1) <= kRadius * std::sqrt(2.0) &&
        (!best || std::abs(e1) < std::abs(best->epsilon0)))
      best = DoubleRoot{e1, gap, it};
  }
  if (!best) {
    std::ostringstream msg;
    msg << "locate_double_root: no eigenvalue collision near " << hint << " within |eps| < " << kRadius
        << " (smallest grid gap " << std::sqrt(seeds.front().first) << ")";
    throw NumericalError(msg.str());
  }
  return *best;
}

// ------------------------------------------------------------------ sweep

struct ToleranceProfile {
  std::int64_t N = 0;
  std::int64_t M = 1;
  double delta = 0.0;
  double phi = 0.0;
  double t = 0.0;
  std::optional<Complex> epsilon0;
  std::int64_t m_naive = 0;
  std::int64_t m_comp = 0;
  double P_measured_naive = 0.0;
  double P_measured_comp = 0.0;
  double P_predicted_naive = 0.0;
  double P_predicted_comp = 0.0;
  double p_marked_naive = 0.0;  // marked-edge mass after m_naive steps
  bool extrapolated = false;    // |delta| >= pi/4, outside the small-detuning regime
};

/// One sweep point: detunes the left side by `delta` and measures
/// |<r0|U^m|l>|^2 for the naive and the compensated step counts.
inline ToleranceProfile tolerance_point(const CollapsedModel& model, const SearchPlan& plan, double delta,
                                        bool locate_root = true) {
  ToleranceProfile p;
  p.N = plan.N;
  p.M = plan.M;
  p.delta = delta;
  p.extrapolated = std::abs(delta) >= kPi / 4.0;
  const auto tuning = detuned_tuning(plan.lambda0, delta, plan.family);
  p.phi = tuning.phi;
  p.t = tuning_t(delta, plan.c, plan.N, plan.M);
  p.m_naive = plan.m;
  p.m_comp = compensated_steps(plan.c, p.t, plan.N, plan.M);
  p.P_predicted_naive = predicted_naive(p.t);
  p.P_predicted_comp = predicted_compensated(p.t);

  const auto u = build_collapsed(model, hub_coefficients(plan.N, plan.M, plan.family.x, plan.family.y), p.phi);
  const auto l = left_active(model.basis(), p.phi, tuning.branch, plan.family);
  const auto first = std::min(p.m_naive, p.m_comp), second = std::max(p.m_naive, p.m_comp);
  const auto s1 = evolve(u, l, first);
  const auto s2 = evolve(u, s1, second - first);
  const auto& at_naive = p.m_naive == first ? s1 : s2;
  const auto& at_comp = p.m_comp == first ? s1 : s2;
  p.P_measured_naive = std::norm(plan.r0.dot(at_naive));
  p.P_measured_comp = std::norm(plan.r0.dot(at_comp));
  p.p_marked_naive = measure_state(at_naive, plan.r0, p.m_naive).p_marked;
  if (locate_root) {
    try {
      p.epsilon0 = locate_double_root(model, p.phi, plan.lambda0, plan.family).epsilon0;
    } catch (const NumericalError&) {
      p.epsilon0.reset();
    }
  }
  return p;
}

inline std::vector<ToleranceProfile> tolerance_sweep(const CollapsedModel& model, std::int64_t N, std::int64_t M,
                                                     std::optional<Complex> lambda0,
                                                     std::span<const double> delta_grid,
                                                     const HubFamily& family = {}) {
  if (delta_grid.empty()) throw std::invalid_argument("tolerance_sweep: empty delta grid");
  const auto plan = plan_search(model, N, M, lambda0, family);
  std::vector<ToleranceProfile> out;
  out.reserve(delta_grid.size());
  for (const double d : delta_grid) out.push_back(tolerance_point(model, plan, d));
  return out;
}

// ------------------------------------------------------------- mixing angle

/// Mass of a collapsed state on the left states |out>, |in>.
inline double left_mass(const StateVector& s) {
  using namespace collapsed_index;
  return std::norm(s.amplitudes(kOut)) + std::norm(s.amplitudes(kIn));
}

struct MixingCheck {
  double t = 0.0;
  double sin2_2omega_plus = 0.0;
  double sin2_2omega_minus = 0.0;
  double left_mass_plus = 0.0;
  double left_mass_minus = 0.0;
};

/// Mixing of the detuned pair at a continuous epsilon: for each paired
/// eigenvector V, with a = |<l|V>|^2 and b = |<r0|V>|^2, sin^2(2 omega) =
/// 4ab/(a+b)^2.
inline MixingCheck mixing_angle_check(const CollapsedModel& model, Complex lambda0, double c, double delta,
                                      double eps, const HubFamily& family = {}) {
  const auto tuning = detuned_tuning(lambda0, delta, family);
  const auto l = left_active(model.basis(), tuning.phi, tuning.branch, family);
  const auto classes = classify_all_right(model, family);
  const RightClassification* rc = nullptr;
  for (const auto& k : classes)
    if (std::abs(k.lambda0 - lambda0) < 1e-6) rc = &k;
  if (!rc || !rc->has_active()) throw std::invalid_argument("mixing_angle_check: lambda0 has no active right vector");
  const auto r0 = right_active_state(model, *rc);
  const auto pair = paired_states(model, tuning.phi, lambda0 * std::polar(1.0, 0.5 * delta), eps, family);

  auto sin2 = [&](const StateVector& v) {
    const double a = std::norm(l.dot(v)), b = std::norm(r0.dot(v));
    return 4.0 * a * b / ((a + b) * (a + b));
  };
  MixingCheck m;
  m.t = tuning_t(delta, c, eps);
  m.sin2_2omega_plus = sin2(pair.v_plus);
  m.sin2_2omega_minus = sin2(pair.v_minus);
  m.left_mass_plus = left_mass(pair.v_plus);
  m.left_mass_minus = left_mass(pair.v_minus);
  return m;
}

}  // namespace starwalk
