// Search planning and execution on the collapsed star graph.
#pragma once

#include "starwalk/spectral.hpp"

#include <random>

namespace starwalk {

/// Collapsed form of the uniform superposition over hub edges,
///   (1/sqrt(N)) sum_j (beta |0,j> + alpha |j,0>),
/// with beta = 1/sqrt(2) and alpha chosen so the unmarked part is the left
/// active eigenvector on the given branch.
inline StateVector initial_state(const BasisPtr& basis, std::int64_t N, std::int64_t M, int branch, double phi,
                                 const HubFamily& family = {}) {
  using namespace collapsed_index;
  if (N < 1 || M < 1 || M > N) throw std::invalid_argument("initial_state: need 1 <= M <= N");
  const auto l = left_active(basis, phi, branch, family);
  const Complex beta = l.amplitudes(kOut), alpha = l.amplitudes(kIn);
  const double wu = std::sqrt(static_cast<double>(N - M) / static_cast<double>(N));
  const double wm = std::sqrt(static_cast<double>(M) / static_cast<double>(N));
  StateVector s{Vector::Zero(basis->size()), basis};
  s.amplitudes(kOut) = wu * beta;
  s.amplitudes(kIn) = wu * alpha;
  s.amplitudes(kHubToMarked) = wm * beta;
  s.amplitudes(kMarkedToHub) = wm * alpha;
  return s;
}

inline StateVector initial_state(std::int64_t N, std::int64_t M, int branch, double phi) {
  return initial_state(EdgeBasis::collapsed({}), N, M, branch, phi);
}

struct SearchPlan {
  Complex lambda0;
  double phi = 0.0;
  int branch = 1;
  double c = 0.0;
  std::int64_t N = 0;
  std::int64_t M = 1;
  std::int64_t m = 0;
  HubFamily family;
  StateVector initial;
  StateVector r0;  // right active eigenvector
  StateVector l0;  // left active eigenvector at the tuned phase
  double predicted_success = 0.0;
};

/// Iteration count floor(pi sqrt(N/M) / (2c)).
inline std::int64_t optimal_steps(double c, std::int64_t N, std::int64_t M) {
  return static_cast<std::int64_t>(
      std::floor(kPi * std::sqrt(static_cast<double>(N) / static_cast<double>(M)) / (2.0 * c)));
}

/// Plans a search targeting `lambda0`, or the best-coupled eigenvalue when
/// `lambda0` is empty.
inline SearchPlan plan_search(const CollapsedModel& model, std::int64_t N, std::int64_t M,
                              std::optional<Complex> lambda0 = std::nullopt, const HubFamily& family = {}) {
  if (M < 1 || M >= N) throw PlanningError("plan_search: need 1 <= M < N");
  const auto classes = classify_all_right(model, family);
  std::size_t pick = 0;
  if (!lambda0) {
    pick = best_target(classes, family.is_standard()).index;
  } else {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < classes.size(); ++i) {
      const double d = std::abs(classes[i].lambda0 - *lambda0);
      if (d < best) {
        best = d;
        pick = i;
      }
    }
    if (best > 1e-6) {
      std::ostringstream msg;
      msg << "plan_search: " << *lambda0 << " is not an eigenvalue of the right side of U_0";
      throw PlanningError(msg.str());
    }
  }
  const auto& rc = classes[pick];
  if (!rc.has_active()) {
    std::ostringstream msg;
    msg << "plan_search: " << rc.lambda0
        << " has no active right eigenvector (case i: constant eigenvalue, no speedup)";
    throw PlanningError(msg.str());
  }
  if (!(rc.c > 1e-12)) throw PlanningError("plan_search: coupling constant is zero, no speedup");

  SearchPlan p;
  p.lambda0 = rc.lambda0;
  const auto tuning = tune_left(rc.lambda0, family);
  p.phi = tuning.phi;
  p.branch = tuning.branch;
  p.c = rc.c;
  p.N = N;
  p.M = M;
  p.m = optimal_steps(rc.c, N, M);
  p.family = family;
  p.initial = initial_state(model.basis(), N, M, p.branch, p.phi, family);
  p.r0 = right_active_state(model, rc);
  p.l0 = left_active(model.basis(), p.phi, p.branch, family);
  p.predicted_success = rc.hub_mass();
  return p;
}

struct SearchResult {
  StateVector final_state;
  std::int64_t steps = 0;
  double p_marked = 0.0;    // |0,1>, |1,0>
  double p_null = 0.0;      // interior of G
  double p_unmarked = 0.0;  // |out>, |in>
  double overlap_r0 = 0.0;  // |<r0|psi>|^2
};

inline SearchResult measure_state(const StateVector& psi, const StateVector& r0, std::int64_t steps) {
  using namespace collapsed_index;
  const auto& a = psi.amplitudes;
  SearchResult r{psi, steps};
  r.p_unmarked = std::norm(a(kOut)) + std::norm(a(kIn));
  r.p_marked = std::norm(a(kHubToMarked)) + std::norm(a(kMarkedToHub));
  r.p_null = a.size() > kInterior ? a.tail(a.size() - kInterior).squaredNorm() : 0.0;
  r.overlap_r0 = std::norm(r0.amplitudes.dot(a));
  return r;
}

/// The collapsed operator a plan runs under.
inline UnitaryOperator plan_operator(const SearchPlan& plan, const CollapsedModel& model) {
  return build_collapsed(model, hub_coefficients(plan.N, plan.M, plan.family.x, plan.family.y), plan.phi);
}

/// Evolves the plan's initial state `steps` times (default: plan.m).
inline SearchResult run_search(const SearchPlan& plan, const CollapsedModel& model,
                               std::optional<std::int64_t> steps = std::nullopt) {
  const auto u = plan_operator(plan, model);
  const auto m = steps.value_or(plan.m);
  return measure_state(evolve(u, plan.initial, m), plan.r0, m);
}

struct MeasurementCounts {
  std::int64_t marked = 0;
  std::int64_t unmarked = 0;
  std::int64_t null = 0;
};

/// Multinomial sample of measurement outcomes, reproducible for a fixed seed.
inline MeasurementCounts sample_measurement(const SearchResult& result, std::uint64_t seed, std::int64_t shots) {
  if (shots < 1) throw std::invalid_argument("sample_measurement: shots must be positive");
  const double total = result.p_marked + result.p_unmarked + result.p_null;
  const double pm = std::clamp(result.p_marked / total, 0.0, 1.0);
  const double pu = std::clamp(result.p_unmarked / total, 0.0, 1.0);
  std::mt19937_64 rng(seed);
  MeasurementCounts c;
  c.marked = std::binomial_distribution<std::int64_t>(shots, pm)(rng);
  const double rest = 1.0 - pm;
  const double pu_cond = rest > 0.0 ? std::clamp(pu / rest, 0.0, 1.0) : 0.0;
  c.unmarked = std::binomial_distribution<std::int64_t>(shots - c.marked, pu_cond)(rng);
  c.null = shots - c.marked - c.unmarked;
  return c;
}

}  // namespace starwalk
