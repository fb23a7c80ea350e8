// Spectral analysis of the collapsed walk: bound/active classification of
// right-side eigenvectors, coupling constants, eigenvalue pairing and
// monodromy of the eigenvalues around epsilon = 0.
#pragma once

#include "starwalk/eigen.hpp"

#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <tuple>

namespace starwalk {

// ---------------------------------------------------------------- left side

/// Eigenvalue of the two-state left block of U_0 on the given branch.
/// For the standard hub this is branch * e^{i phi / 2}.
inline Complex left_eigenvalue(double phi, int branch, const HubFamily& family = {}) {
  if (branch != 1 && branch != -1) throw std::invalid_argument("left_eigenvalue: branch must be +1 or -1");
  const double rl = family.is_standard() ? 0.0 : std::arg(family.left_reflection0());
  return static_cast<double>(branch) * std::polar(1.0, 0.5 * (phi + rl));
}

/// The left active eigenvector (|out> + a|in>)/sqrt(2) of U_0.
inline StateVector left_active(const BasisPtr& basis, double phi, int branch, const HubFamily& family = {}) {
  using namespace collapsed_index;
  if (basis->kind() != BasisKind::collapsed) throw std::invalid_argument("left_active: needs a collapsed basis");
  const Complex lambda = left_eigenvalue(phi, branch, family);
  StateVector s{Vector::Zero(basis->size()), basis};
  s.amplitudes(kOut) = 1.0 / std::sqrt(2.0);
  s.amplitudes(kIn) = std::polar(1.0, phi) / lambda / std::sqrt(2.0);
  return s;
}

inline StateVector left_active(double phi, int branch, const HubFamily& family = {}) {
  return left_active(EdgeBasis::collapsed({}), phi, branch, family);
}

/// Phase and branch that put the left eigenvalue exactly on `target`.
struct Tuning {
  double phi = 0.0;
  int branch = 1;
};

inline Tuning tune_left(Complex target, const HubFamily& family = {}) {
  const double rl = family.is_standard() ? 0.0 : std::arg(family.left_reflection0());
  Tuning t;
  t.phi = wrap_angle(2.0 * std::arg(target) - rl);
  t.branch = std::abs(left_eigenvalue(t.phi, 1, family) - target / std::abs(target)) < 1.0 ? 1 : -1;
  return t;
}

// --------------------------------------------------------------- right side

/// Bound/active split of one eigenspace of the right block of U_0. Vectors
/// are in right-side coordinates: |0,1>, |1,0>, then the interior of G.
struct RightClassification {
  Complex lambda0;
  int eigenspace_dim = 0;
  std::vector<Vector> bound_basis;
  std::optional<Vector> active;
  double c = 0.0;

  [[nodiscard]] bool has_active() const { return active.has_value(); }
  /// |<0,1|r0>|^2 + |<1,0|r0>|^2, the marked-edge mass of the active vector.
  [[nodiscard]] double hub_mass() const { return active ? active->head(2).squaredNorm() : 0.0; }
};

/// Splits the lambda0 eigenspace of `right_block` into vectors with no
/// amplitude on the hub-facing states and at most one hub-contacting vector.
/// Throws ModelViolation if two independent directions touch the hub.
inline RightClassification classify_right(const Matrix& right_block, Complex lambda0,
                                          const HubFamily& family = {}) {
  const auto n = right_block.rows();
  if (n < 2 || right_block.cols() != n) throw std::invalid_argument("classify_right: bad right block shape");

  Eigen::JacobiSVD<Matrix> svd(right_block - lambda0 * Matrix::Identity(n, n), Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  std::vector<Eigen::Index> null_cols;
  for (Eigen::Index k = 0; k < n; ++k)
    if (sv(k) <= tol::kCluster) null_cols.push_back(k);
  if (null_cols.empty()) {
    std::ostringstream msg;
    msg << "classify_right: " << lambda0 << " is not an eigenvalue of the right block (smallest singular value "
        << sv(n - 1) << ")";
    throw NumericalError(msg.str());
  }
  Matrix z(n, static_cast<Eigen::Index>(null_cols.size()));
  for (std::size_t k = 0; k < null_cols.size(); ++k) z.col(static_cast<Eigen::Index>(k)) = svd.matrixV().col(null_cols[k]);

  RightClassification rc;
  rc.lambda0 = lambda0;
  rc.eigenspace_dim = static_cast<int>(z.cols());

  const Matrix hub_rows = z.topRows(2);
  Eigen::JacobiSVD<Matrix> hsvd(hub_rows, Eigen::ComputeFullV);
  const auto& hs = hsvd.singularValues();
  int rank = 0;
  for (Eigen::Index k = 0; k < hs.size(); ++k)
    if (hs(k) > tol::kBoundRank) ++rank;
  if (rank > 1) {
    std::ostringstream msg;
    msg << "classify_right: eigenspace of " << lambda0 << " has " << rank
        << " independent hub-contacting directions; at most one is allowed";
    throw ModelViolation(msg.str());
  }
  const Matrix& hv = hsvd.matrixV();
  for (Eigen::Index k = rank; k < z.cols(); ++k) {
    Vector b = z * hv.col(k);
    fix_gauge(b);
    rc.bound_basis.push_back(std::move(b));
  }
  if (rank == 1) {
    Vector a = z * hv.col(0);
    a.normalize();
    fix_gauge(a);
    rc.active = std::move(a);
    rc.c = std::abs(family.transmission_slope()) / std::sqrt(2.0) * std::abs((*rc.active)(1));
  }
  return rc;
}

/// Classification of every eigenvalue group of the right block of U_0.
inline std::vector<RightClassification> classify_all_right(const CollapsedModel& model,
                                                           const HubFamily& family = {}) {
  const Matrix rb = model.right_block0(family);
  const auto groups = group_eigenvalues(eigendecompose(rb));
  std::vector<RightClassification> out;
  out.reserve(groups.size());
  for (const auto& g : groups) out.push_back(classify_right(rb, g.lambda0, family));
  return out;
}

/// The collapsed-basis state |r0> of a classification.
inline StateVector right_active_state(const CollapsedModel& model, const RightClassification& rc) {
  if (!rc.active) throw std::invalid_argument("right_active_state: no active vector");
  return embed_right(model.basis(), *rc.active);
}

// ------------------------------------------------------------ coupling

/// The sqrt(epsilon) coefficient of U(epsilon) in the collapsed basis.
inline Matrix u1_matrix(const BasisPtr& basis, const HubFamily& family = {}) {
  using namespace collapsed_index;
  Matrix u1 = Matrix::Zero(basis->size(), basis->size());
  const Complex k = family.transmission_slope();
  u1(kHubToMarked, kIn) = k;
  u1(kOut, kMarkedToHub) = k;
  return u1;
}

inline Matrix u1_matrix(const CollapsedModel& model, const HubFamily& family = {}) {
  return u1_matrix(model.basis(), family);
}

/// |<l0|U1|r0>|.
inline double coupling_c(const StateVector& l0, const StateVector& r0, const Matrix& u1) {
  if (!l0.basis->same_as(*r0.basis)) throw std::invalid_argument("coupling_c: basis mismatch");
  return std::abs(l0.amplitudes.dot(u1 * r0.amplitudes));
}

/// Closed form |k| |<out|l0>| |<1,0|r0>| with k the transmission slope (2 for
/// the standard hub).
inline double coupling_c_closed(const StateVector& l0, const StateVector& r0, const HubFamily& family = {}) {
  using namespace collapsed_index;
  return std::abs(family.transmission_slope()) * std::abs(l0.amplitudes(kOut)) *
         std::abs(r0.amplitudes(kMarkedToHub));
}

struct BestTarget {
  Complex lambda0;
  double c = 0.0;
  int d = 0;
  double sum_c2 = 0.0;
  std::size_t index = 0;  // into the classification list
};

/// Picks the active eigenvalue with the largest coupling. Ties go to the
/// eigenvalue with the smallest |arg|. With `check_sum`, verifies that the
/// squared couplings add up to 2 and that max c >= sqrt(2/d).
inline BestTarget best_target(const std::vector<RightClassification>& classes, bool check_sum = true) {
  BestTarget best;
  bool found = false;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto& rc = classes[i];
    if (!rc.has_active()) continue;
    ++best.d;
    best.sum_c2 += rc.c * rc.c;
    const bool better = !found || rc.c > best.c + 1e-9 ||
                        (std::abs(rc.c - best.c) <= 1e-9 && std::abs(std::arg(rc.lambda0)) <
                                                                std::abs(std::arg(best.lambda0)) - 1e-9);
    if (better) {
      best.lambda0 = rc.lambda0;
      best.c = rc.c;
      best.index = i;
      found = true;
    }
  }
  if (!found) throw PlanningError("best_target: no eigenvalue has an active right eigenvector");
  if (check_sum) {
    if (std::abs(best.sum_c2 - 2.0) > 1e-9) {
      std::ostringstream msg;
      msg << "best_target: squared couplings sum to " << best.sum_c2 << ", expected 2 (classification is inconsistent)";
      throw NumericalError(msg.str());
    }
    if (best.c < std::sqrt(2.0 / best.d) - 1e-9)
      throw NumericalError("best_target: max coupling below sqrt(2/d)");
  }
  return best;
}

// ------------------------------------------------------ characteristic poly

/// det(z I - U).
inline Complex characteristic_value(const Matrix& u, Complex z) {
  return (z * Matrix::Identity(u.rows(), u.cols()) - u).determinant();
}

/// Fits det(zI - U(eps)) linearly in eps from the first two samples and
/// returns the largest prediction error over the remaining samples and all z.
inline double affine_residual(const CollapsedModel& model, double phi, std::span<const Complex> z_samples,
                              std::span<const double> eps_samples, const HubFamily& family = {}) {
  if (eps_samples.size() < 3) throw std::invalid_argument("affine_residual: need at least three epsilon samples");
  std::vector<Matrix> ops;
  for (const double e : eps_samples) ops.push_back(model.matrix(family.at(e), phi));
  double worst = 0.0;
  for (const Complex z : z_samples) {
    const Complex d0 = characteristic_value(ops[0], z), d1 = characteristic_value(ops[1], z);
    const double e0 = eps_samples[0], e1 = eps_samples[1];
    for (std::size_t k = 2; k < ops.size(); ++k) {
      const Complex predicted = d0 + (d1 - d0) * ((eps_samples[k] - e0) / (e1 - e0));
      worst = std::max(worst, std::abs(predicted - characteristic_value(ops[k], z)));
    }
  }
  return worst;
}

// --------------------------------------------------------------- pairing

enum class PairingCase { constant = 1, drift = 2, paired = 3 };

inline const char* case_name(PairingCase c) {
  switch (c) {
    case PairingCase::constant: return "i";
    case PairingCase::drift: return "ii";
    case PairingCase::paired: return "iii";
  }
  return "?";
}

struct PairingFit {
  Complex lambda0;
  double phi = 0.0;
  PairingCase detected = PairingCase::constant;
  int family_size = 0;  // multiplicity of lambda0 in U_0
  int moving = 0;       // members whose eigenvalue changes with epsilon
  double c_fit = 0.0;
  double residual_slope = 0.0;  // paired: |lambda_pm - lambda0 e^{pm i c sqrt(eps)}|
  double split_slope = 0.0;     // paired: phase split between the two members
  double drift_slope = 0.0;     // drift: |lambda - lambda0|
  bool balanced = false;        // lambda0^2 + e^{i phi} = 0: no net flow, pairing not claimed
  std::vector<double> epsilon_grid;
  std::vector<double> c_samples;
  std::vector<double> residuals;
};

namespace detail {

inline double floor_positive(double v) { return std::max(v, 1e-300); }

/// Indices of the `count` eigenvalues nearest to `center`.
inline std::vector<std::size_t> nearest(const std::vector<Complex>& values, Complex center, std::size_t count) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(values[a] - center) < std::abs(values[b] - center);
  });
  idx.resize(std::min(count, idx.size()));
  return idx;
}

}  // namespace detail

inline bool is_balanced(Complex lambda0, double phi) {
  return std::abs(lambda0 * lambda0 + std::polar(1.0, phi)) < 1e-9;
}

/// Tracks the lambda0 family of U(eps) over `eps_grid` and decides which of
/// the three cases applies: all members constant, one member drifting at
/// O(eps), or a pair lambda0 e^{pm i c sqrt(eps)} + O(eps).
inline PairingFit pairing_fit(const CollapsedModel& model, double phi, Complex lambda0,
                              std::span<const double> eps_grid, const HubFamily& family = {}) {
  if (eps_grid.size() < 2) throw std::invalid_argument("pairing_fit: need at least two epsilon values");
  for (const double e : eps_grid)
    if (!(e > 0.0 && e <= 0.5)) throw std::invalid_argument("pairing_fit: epsilon values must lie in (0, 1/2]");

  PairingFit fit;
  fit.lambda0 = lambda0;
  fit.phi = phi;
  fit.balanced = is_balanced(lambda0, phi);

  const auto sys0 = eigendecompose(model.matrix(family.at(0.0), phi));
  for (const auto& v : sys0.values)
    if (std::abs(v - lambda0) <= tol::kCluster) ++fit.family_size;
  if (fit.family_size == 0) {
    std::ostringstream msg;
    msg << "pairing_fit: " << lambda0 << " is not an eigenvalue of U_0 at phi=" << phi;
    throw std::invalid_argument(msg.str());
  }

  std::vector<double> grid(eps_grid.begin(), eps_grid.end());
  std::sort(grid.begin(), grid.end());
  fit.epsilon_grid = grid;

  // Moving members are decided at the largest epsilon, where they are
  // furthest from lambda0.
  std::vector<std::vector<Complex>> family_values;
  for (const double e : grid) {
    const auto sys = eigendecompose(model.matrix(family.at(e), phi));
    auto idx = detail::nearest(sys.values, lambda0, static_cast<std::size_t>(fit.family_size));
    std::vector<Complex> vals;
    for (const auto k : idx) vals.push_back(sys.values[k]);
    family_values.push_back(std::move(vals));
  }
  for (const auto& v : family_values.back())
    if (std::abs(v - lambda0) > 1e-10) ++fit.moving;
  if (fit.moving > 2) {
    std::ostringstream msg;
    msg << "pairing_fit: " << fit.moving << " members of the " << lambda0 << " family move with epsilon";
    throw ModelViolation(msg.str());
  }
  fit.detected = static_cast<PairingCase>(fit.moving + 1);

  if (fit.detected == PairingCase::drift) {
    std::vector<double> drift;
    for (const auto& vals : family_values) drift.push_back(detail::floor_positive(std::abs(vals.back() - lambda0)));
    fit.residuals = drift;
    fit.drift_slope = loglog_slope(grid, drift);
  } else if (fit.detected == PairingCase::paired) {
    std::vector<double> split, theta_plus, theta_minus;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const auto& vals = family_values[k];
      const std::size_t n = vals.size();
      double a = std::arg(vals[n - 1] / lambda0), b = std::arg(vals[n - 2] / lambda0);
      if (a < b) std::swap(a, b);
      theta_plus.push_back(a);
      theta_minus.push_back(b);
      split.push_back(a - b);
      fit.c_samples.push_back((a - b) / (2.0 * std::sqrt(grid[k])));
    }
    // c(eps) = c + O(eps): the odd Puiseux terms cancel in the split.
    const double e1 = grid[0], e2 = grid[1], c1 = fit.c_samples[0], c2 = fit.c_samples[1];
    fit.c_fit = (c1 * e2 - c2 * e1) / (e2 - e1);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const double w = fit.c_fit * std::sqrt(grid[k]);
      const double rp = std::abs(std::polar(1.0, theta_plus[k]) - std::polar(1.0, w));
      const double rm = std::abs(std::polar(1.0, theta_minus[k]) - std::polar(1.0, -w));
      fit.residuals.push_back(detail::floor_positive(std::max(rp, rm)));
    }
    fit.residual_slope = loglog_slope(grid, fit.residuals);
    fit.split_slope = loglog_slope(grid, split);
  }
  return fit;
}

/// Expected case from hub contact on each side: one more than the number of
/// sides with an active lambda0 eigenvector.
inline PairingCase expected_case(bool left_active_here, bool right_active_here) {
  return static_cast<PairingCase>(1 + static_cast<int>(left_active_here) + static_cast<int>(right_active_here));
}

/// The two hub-contacting eigenpairs of U(eps) nearest `center`.
struct PairedStates {
  Complex lambda_plus;
  Complex lambda_minus;
  StateVector v_plus;
  StateVector v_minus;
};

inline PairedStates paired_states(const CollapsedModel& model, double phi, Complex center, double eps,
                                  const HubFamily& family = {}) {
  using namespace collapsed_index;
  const auto sys = eigendecompose(model.matrix(family.at(eps), phi));
  std::vector<Complex> candidates;
  std::vector<std::size_t> where;
  for (std::size_t k = 0; k < sys.size(); ++k) {
    if (sys.vectors.col(static_cast<Eigen::Index>(k)).head(kInterior).squaredNorm() < 1e-12) continue;
    candidates.push_back(sys.values[k]);
    where.push_back(k);
  }
  if (candidates.size() < 2) throw NumericalError("paired_states: fewer than two hub-contacting eigenvectors");
  auto idx = detail::nearest(candidates, center, 2);
  std::size_t p = where[idx[0]], m = where[idx[1]];
  if (std::arg(sys.values[p] / center) < std::arg(sys.values[m] / center)) std::swap(p, m);
  return {sys.values[p], sys.values[m], StateVector{sys.vector(p), model.basis()},
          StateVector{sys.vector(m), model.basis()}};
}

// -------------------------------------------------------------- monodromy

struct MonodromyReport {
  double rho = 0.0;
  int steps = 0;
  int refinements = 0;  // extra bisections needed to keep tracking unambiguous
  std::vector<Complex> start_values;
  std::vector<std::size_t> permutation;  // track k ends on start value permutation[k]
  std::vector<std::vector<std::size_t>> cycles;

  [[nodiscard]] std::vector<int> cycle_lengths() const {
    std::vector<int> l;
    for (const auto& c : cycles) l.push_back(static_cast<int>(c.size()));
    return l;
  }
  [[nodiscard]] int count_cycles(int length) const {
    return static_cast<int>(std::count_if(cycles.begin(), cycles.end(),
                                          [&](const auto& c) { return static_cast<int>(c.size()) == length; }));
  }
};

namespace detail {

inline constexpr double kDegenerate = 1e-8;

/// Labels each value with the smallest index of its degenerate cluster.
inline std::vector<std::size_t> degenerate_clusters(const std::vector<Complex>& v) {
  std::vector<std::size_t> label(v.size());
  std::iota(label.begin(), label.end(), 0);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(v[i] - v[j]) < kDegenerate) {
        label[i] = label[j];
        break;
      }
  return label;
}

/// Greedy nearest matching from `from` to `to`; entry k is the index in `to`
/// assigned to from[k]. Inside a degenerate cluster of `to`, tracks are
/// assigned in index order, so constant degenerate eigenvalues map to
/// themselves.
inline std::vector<std::size_t> greedy_match(const std::vector<Complex>& from, const std::vector<Complex>& to) {
  const std::size_t n = from.size();
  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  pairs.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) pairs.emplace_back(std::abs(from[i] - to[j]), i, j);
  std::sort(pairs.begin(), pairs.end());
  std::vector<std::size_t> match(n, n);
  std::vector<bool> used(n, false);
  for (const auto& [d, i, j] : pairs) {
    if (match[i] != n || used[j]) continue;
    match[i] = j;
    used[j] = true;
  }
  const auto label = degenerate_clusters(to);
  std::map<std::size_t, std::vector<std::size_t>> tracks_in, members;
  for (std::size_t i = 0; i < n; ++i) tracks_in[label[match[i]]].push_back(i);
  for (std::size_t j = 0; j < n; ++j) members[label[j]].push_back(j);
  for (auto& [l, tracks] : tracks_in) {
    auto& mem = members[l];
    std::sort(tracks.begin(), tracks.end());
    for (std::size_t k = 0; k < tracks.size() && k < mem.size(); ++k) match[tracks[k]] = mem[k];
  }
  return match;
}

}  // namespace detail

/// Follows every eigenvalue of U(eps) once around eps = rho e^{i theta} and
/// returns the induced permutation. sqrt(eps - eps^2) is continued along the
/// loop, so after one turn it has changed sign.
inline MonodromyReport monodromy(const CollapsedModel& model, double phi, double rho = 1e-4, int steps = 360,
                                 const HubFamily& family = {}) {
  if (steps < 180) throw std::invalid_argument("monodromy: need at least 180 steps");
  if (!(rho > 0.0 && rho < 0.1)) throw std::invalid_argument("monodromy: loop radius must lie in (0, 0.1)");
  constexpr int kMaxDepth = 12;

  const Complex phase = std::polar(1.0, phi);
  auto op = [&](Complex eps, Complex s) { return model.matrix(family.at(eps, s), phase); };

  MonodromyReport rep;
  rep.rho = rho;
  rep.steps = steps;

  Complex s_cur = std::sqrt(Complex(rho - rho * rho, 0.0));
  auto start = eigendecompose_general(op(rho, s_cur));
  rep.start_values = start.values;
  std::vector<Complex> cur = start.values;
  Matrix cur_vec = start.vectors;
  const std::size_t n = cur.size();

  // Advances the tracks from angle a to angle b, bisecting when the nearest
  // match is not clearly separated from the runner-up.
  std::function<void(double, double, int)> advance = [&](double a, double b, int depth) {
    const Complex eps = rho * std::polar(1.0, b);
    Complex s = std::sqrt(eps - eps * eps);
    if (std::abs(-s - s_cur) < std::abs(s - s_cur)) s = -s;
    const auto next = eigendecompose_general(op(eps, s));
    const auto match = detail::greedy_match(cur, next.values);
    const auto label = detail::degenerate_clusters(next.values);

    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      const std::size_t j = match[i];
      const double d = std::abs(cur[i] - next.values[j]);
      double runner_up = std::numeric_limits<double>::infinity();
      std::size_t rival = n;
      for (std::size_t k = 0; k < n; ++k) {
        if (label[k] == label[j]) continue;
        const double dk = std::abs(cur[i] - next.values[k]);
        if (dk < runner_up) {
          runner_up = dk;
          rival = k;
        }
      }
      if (d < 0.5 * runner_up) continue;
      // Eigenvector overlap as tie-breaker.
      const auto col_i = cur_vec.col(static_cast<Eigen::Index>(i));
      const double o_match = std::abs(col_i.dot(next.vectors.col(static_cast<Eigen::Index>(j))));
      const double o_rival = rival < n ? std::abs(col_i.dot(next.vectors.col(static_cast<Eigen::Index>(rival)))) : 0.0;
      ok = o_match > 0.9 && o_rival < 0.5;
    }
    if (!ok) {
      if (depth >= kMaxDepth) {
        std::ostringstream msg;
        msg << "monodromy: eigenvalue tracking is ambiguous near theta=" << b << " (rho=" << rho
            << "); increase steps or shrink rho";
        throw NumericalError(msg.str());
      }
      ++rep.refinements;
      const double mid = 0.5 * (a + b);
      advance(a, mid, depth + 1);
      advance(mid, b, depth + 1);
      return;
    }
    std::vector<Complex> moved(n);
    Matrix moved_vec(cur_vec.rows(), cur_vec.cols());
    for (std::size_t i = 0; i < n; ++i) {
      moved[i] = next.values[match[i]];
      moved_vec.col(static_cast<Eigen::Index>(i)) = next.vectors.col(static_cast<Eigen::Index>(match[i]));
    }
    cur = std::move(moved);
    cur_vec = std::move(moved_vec);
    s_cur = s;
  };

  for (int k = 0; k < steps; ++k)
    advance(2.0 * kPi * k / steps, 2.0 * kPi * (k + 1) / steps, 0);

  rep.permutation = detail::greedy_match(cur, rep.start_values);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::abs(cur[i] - rep.start_values[rep.permutation[i]]);
    if (d > 1e-7) {
      std::ostringstream msg;
      msg << "monodromy: track " << i << " did not return to the starting spectrum (distance " << d << ")";
      throw NumericalError(msg.str());
    }
  }
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    std::vector<std::size_t> cyc;
    for (std::size_t k = i; !seen[k]; k = rep.permutation[k]) {
      seen[k] = true;
      cyc.push_back(k);
    }
    rep.cycles.push_back(std::move(cyc));
  }
  return rep;
}

}  // namespace starwalk
