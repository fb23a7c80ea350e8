// Time-step operators on the collapsed and full star graphs, state evolution
// and the full <-> collapsed state mapping.
#pragma once

#include "starwalk/basis.hpp"
#include "starwalk/hub.hpp"
#include "starwalk/subgraph.hpp"

#include <optional>

namespace starwalk {

/// A dense time-step matrix bound to the basis it acts on.
struct UnitaryOperator {
  Matrix matrix;
  BasisPtr basis;
  double epsilon = 0.0;
  std::optional<EpsilonRatio> ratio;
  double phi = 0.0;

  [[nodiscard]] Eigen::Index dim() const { return matrix.rows(); }
};

/// The collapsed walk for one subgraph, reusable across epsilon and phi.
///
/// Only the hub entries and the left reflection depend on the parameters, so
/// the scattering inside G is assembled once.
class CollapsedModel {
 public:
  explicit CollapsedModel(SubgraphSpec spec) : spec_(std::move(spec)) {
    spec_.validate();
    basis_ = EdgeBasis::collapsed(spec_.interior);
    const auto n = basis_->size();
    interior_ = Matrix::Zero(n, n);
    for (const auto& v : spec_.vertices) {
      for (std::size_t j = 0; j < v.ports_in.size(); ++j) {
        const auto col = basis_->index(v.ports_in[j]);
        for (std::size_t i = 0; i < v.ports_out.size(); ++i) {
          const auto row = basis_->index(v.ports_out[i]);
          interior_(row, col) = v.scattering(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
      }
    }
  }

  [[nodiscard]] const SubgraphSpec& spec() const { return spec_; }
  [[nodiscard]] const BasisPtr& basis() const { return basis_; }
  [[nodiscard]] Eigen::Index dim() const { return basis_->size(); }
  [[nodiscard]] Eigen::Index right_dim() const { return basis_->size() - 2; }

  /// U for the given collapsed hub coefficients and left reflection phase
  /// factor (e^{i phi} for real phi).
  [[nodiscard]] Matrix matrix(const HubCoefficients& hub, Complex left_phase) const {
    using namespace collapsed_index;
    Matrix u = interior_;
    u(kIn, kOut) = left_phase;
    u(kOut, kIn) = hub.R_L;
    u(kHubToMarked, kIn) = hub.T;
    u(kHubToMarked, kMarkedToHub) = hub.R_R;
    u(kOut, kMarkedToHub) = hub.T;
    return u;
  }

  [[nodiscard]] Matrix matrix(const HubCoefficients& hub, double phi) const {
    return matrix(hub, std::polar(1.0, phi));
  }

  /// U(epsilon) along the real axis for a hub family.
  [[nodiscard]] UnitaryOperator at(double eps, double phi, const HubFamily& family = {}) const {
    return {matrix(family.at(eps), phi), basis_, eps, std::nullopt, phi};
  }

  /// Right block of U_0: basis |0,1>, |1,0>, interior.
  [[nodiscard]] Matrix right_block0(const HubFamily& family = {}) const {
    return matrix(family.at(0.0), 0.0).bottomRightCorner(right_dim(), right_dim());
  }

 private:
  SubgraphSpec spec_;
  BasisPtr basis_;
  Matrix interior_;
};

/// Collapsed operator for a concrete hub; epsilon is the hub's M/N.
/// Throws SpecError if the result is not unitary.
inline UnitaryOperator build_collapsed(const CollapsedModel& model, const HubModel& hub, double phi) {
  UnitaryOperator u{model.matrix(hub.collapsed, phi), model.basis(), hub.epsilon.value(), hub.epsilon, phi};
  const double res = unitarity_residual(u.matrix);
  if (!(res < tol::kOperatorUnitarity))
    throw SpecError("collapsed operator is not unitary (residual " + std::to_string(res) + ")");
  return u;
}

inline UnitaryOperator build_collapsed(const SubgraphSpec& spec, const HubModel& hub, double phi) {
  return build_collapsed(CollapsedModel(spec), hub, phi);
}

inline constexpr Eigen::Index kMaxFullStates = 5000;

/// The uncollapsed graph: a diffusive (or generalized) hub on N edges,
/// phase-phi reflectors on edges M+1..N and disjoint copies of G on edges 1..M.
inline UnitaryOperator build_full(const SubgraphSpec& spec, std::int64_t N, std::int64_t M, double x,
                                  double y, double phi) {
  spec.validate();
  const auto hub = hub_coefficients(N, M, x, y);
  const auto states = 2 * N + M * static_cast<std::int64_t>(spec.interior.size());
  if (states > kMaxFullStates)
    throw std::length_error("build_full: " + std::to_string(states) + " states exceeds the dense limit of " +
                            std::to_string(kMaxFullStates));

  auto basis = EdgeBasis::full(spec.interior, N, M);
  Matrix u = Matrix::Zero(basis->size(), basis->size());
  for (std::int64_t j = 1; j <= N; ++j)
    for (std::int64_t k = 1; k <= N; ++k) u(basis->hub_out(k), basis->hub_in(j)) = (j == k) ? hub.r : hub.t;

  const Complex reflect = std::polar(1.0, phi);
  for (std::int64_t j = M + 1; j <= N; ++j) u(basis->hub_in(j), basis->hub_out(j)) = reflect;

  std::unordered_map<std::string, Eigen::Index> interior_pos;
  for (std::size_t i = 0; i < spec.interior.size(); ++i)
    interior_pos.emplace(spec.interior[i], static_cast<Eigen::Index>(i));
  for (std::int64_t k = 1; k <= M; ++k) {
    auto position = [&](const std::string& label) -> Eigen::Index {
      if (label == kHubToMarkedLabel) return basis->hub_out(k);
      if (label == kMarkedToHubLabel) return basis->hub_in(k);
      return basis->copy_interior(k, interior_pos.at(label));
    };
    for (const auto& v : spec.vertices)
      for (std::size_t j = 0; j < v.ports_in.size(); ++j)
        for (std::size_t i = 0; i < v.ports_out.size(); ++i)
          u(position(v.ports_out[i]), position(v.ports_in[j])) =
              v.scattering(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  const double res = unitarity_residual(u);
  if (!(res < tol::kOperatorUnitarity))
    throw SpecError("full operator is not unitary (residual " + std::to_string(res) + ")");
  return {std::move(u), std::move(basis), hub.epsilon.value(), hub.epsilon, phi};
}

inline StateVector apply(const UnitaryOperator& u, const StateVector& s) {
  if (!u.basis->same_as(*s.basis)) throw std::invalid_argument("apply: state and operator bases differ");
  return {u.matrix * s.amplitudes, u.basis};
}

inline StateVector evolve(const UnitaryOperator& u, const StateVector& s, std::int64_t steps) {
  if (steps < 0) throw std::invalid_argument("evolve: negative step count");
  if (!u.basis->same_as(*s.basis)) throw std::invalid_argument("evolve: state and operator bases differ");
  Vector a = s.amplitudes;
  Vector next(a.size());
  for (std::int64_t k = 0; k < steps; ++k) {
    next.noalias() = u.matrix * a;
    a.swap(next);
  }
  return {std::move(a), s.basis};
}

/// Expands a collapsed state into the given full basis.
inline StateVector lift_collapsed_state(const StateVector& s, const BasisPtr& full) {
  using namespace collapsed_index;
  if (s.basis->kind() != BasisKind::collapsed || full->kind() != BasisKind::full)
    throw std::invalid_argument("lift_collapsed_state: needs a collapsed state and a full basis");
  if (s.basis->interior() != full->interior())
    throw std::invalid_argument("lift_collapsed_state: interior labels differ");
  const auto N = full->hub_degree(), M = full->copies();
  const auto& a = s.amplitudes;
  if (N == M && (std::abs(a(kOut)) > 0.0 || std::abs(a(kIn)) > 0.0))
    throw std::invalid_argument("lift_collapsed_state: no unmarked edges to carry |in>/|out>");

  Vector f = Vector::Zero(full->size());
  if (N > M) {
    const double w = 1.0 / std::sqrt(static_cast<double>(N - M));
    for (std::int64_t j = M + 1; j <= N; ++j) {
      f(full->hub_out(j)) = w * a(kOut);
      f(full->hub_in(j)) = w * a(kIn);
    }
  }
  const double wm = 1.0 / std::sqrt(static_cast<double>(M));
  const auto ni = static_cast<Eigen::Index>(full->interior().size());
  for (std::int64_t k = 1; k <= M; ++k) {
    f(full->hub_out(k)) = wm * a(kHubToMarked);
    f(full->hub_in(k)) = wm * a(kMarkedToHub);
    for (Eigen::Index i = 0; i < ni; ++i) f(full->copy_interior(k, i)) = wm * a(kInterior + i);
  }
  return {std::move(f), full};
}

inline StateVector lift_collapsed_state(const StateVector& s, std::int64_t N, std::int64_t M) {
  return lift_collapsed_state(s, EdgeBasis::full(s.basis->interior(), N, M));
}

struct RestrictedState {
  StateVector state;
  /// Norm of the part of the full state that is not symmetric under
  /// permutations of unmarked edges (and of copies of G).
  double leakage = 0.0;
};

/// Projects a full state onto the symmetric subspace and expresses it in the
/// collapsed basis.
inline RestrictedState restrict_full_state(const StateVector& s, const BasisPtr& collapsed) {
  using namespace collapsed_index;
  const auto& full = s.basis;
  if (full->kind() != BasisKind::full || collapsed->kind() != BasisKind::collapsed)
    throw std::invalid_argument("restrict_full_state: needs a full state and a collapsed basis");
  if (collapsed->interior() != full->interior())
    throw std::invalid_argument("restrict_full_state: interior labels differ");
  const auto N = full->hub_degree(), M = full->copies();
  const auto& f = s.amplitudes;

  Vector a = Vector::Zero(collapsed->size());
  if (N > M) {
    const double w = 1.0 / std::sqrt(static_cast<double>(N - M));
    for (std::int64_t j = M + 1; j <= N; ++j) {
      a(kOut) += w * f(full->hub_out(j));
      a(kIn) += w * f(full->hub_in(j));
    }
  }
  const double wm = 1.0 / std::sqrt(static_cast<double>(M));
  const auto ni = static_cast<Eigen::Index>(full->interior().size());
  for (std::int64_t k = 1; k <= M; ++k) {
    a(kHubToMarked) += wm * f(full->hub_out(k));
    a(kMarkedToHub) += wm * f(full->hub_in(k));
    for (Eigen::Index i = 0; i < ni; ++i) a(kInterior + i) += wm * f(full->copy_interior(k, i));
  }
  StateVector c{std::move(a), collapsed};
  const double leak = (lift_collapsed_state(c, full).amplitudes - f).norm();
  return {std::move(c), leak};
}

inline RestrictedState restrict_full_state(const StateVector& s) {
  return restrict_full_state(s, EdgeBasis::collapsed(s.basis->interior()));
}

}  // namespace starwalk
