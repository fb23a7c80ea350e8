// Full spectral report for one subgraph and its JSON form.
#pragma once

#include "starwalk/search.hpp"
#include "starwalk/tolerance.hpp"

#include <json.hpp>

namespace starwalk {

struct AnalyzeOptions {
  HubFamily family;
  /// Phase for the monodromy loop; defaults to the phase tuned to the best target.
  std::optional<double> phi;
  std::vector<double> eps_grid = log_grid(1e-2, 1e-6, 9);
  double rho = 1e-4;
  int steps = 360;
};

struct SpectralReport {
  std::string name;
  HubFamily family;
  EigenSystem right_system;
  std::vector<EigenvalueGroup> groups;
  std::vector<RightClassification> classes;
  std::optional<BestTarget> best;
  std::vector<PairingFit> fits;
  double monodromy_phi = 0.0;
  std::optional<MonodromyReport> monodromy;
  std::vector<std::string> warnings;
};

/// Runs classification, coupling table, pairing fits (each eigenvalue at its
/// own tuned phase) and one monodromy loop.
inline SpectralReport analyze_spec(const CollapsedModel& model, const AnalyzeOptions& opt = {}) {
  SpectralReport r;
  r.name = model.spec().name;
  r.family = opt.family;
  if (!opt.family.is_standard())
    r.warnings.emplace_back("generalized hub: the one-active-vector classification is applied unchanged");

  const Matrix rb = model.right_block0(opt.family);
  r.right_system = eigendecompose(rb);
  r.groups = group_eigenvalues(r.right_system);
  for (const auto& g : r.groups) r.classes.push_back(classify_right(rb, g.lambda0, opt.family));

  bool any_active = false;
  for (const auto& rc : r.classes) any_active = any_active || rc.has_active();
  if (any_active) r.best = best_target(r.classes, opt.family.is_standard());

  for (const auto& rc : r.classes) {
    const auto tuning = tune_left(rc.lambda0, opt.family);
    auto fit = pairing_fit(model, tuning.phi, rc.lambda0, opt.eps_grid, opt.family);
    const auto expect = expected_case(true, rc.has_active());
    if (fit.detected != expect) {
      std::ostringstream msg;
      msg << "eigenvalue " << rc.lambda0 << ": pairing fit found case " << case_name(fit.detected)
          << " but hub contact predicts case " << case_name(expect);
      r.warnings.push_back(msg.str());
    }
    r.fits.push_back(std::move(fit));
  }

  r.monodromy_phi = opt.phi.value_or(r.best ? tune_left(r.best->lambda0, opt.family).phi : 0.0);
  for (const auto& rc : r.classes)
    if (is_balanced(rc.lambda0, r.monodromy_phi)) {
      std::ostringstream msg;
      msg << "eigenvalue " << rc.lambda0 << " satisfies lambda0^2 + e^{i phi} = 0 at phi=" << r.monodromy_phi
          << ": no net flow across the hub, pairing not claimed";
      r.warnings.push_back(msg.str());
    }
  r.monodromy = monodromy(model, r.monodromy_phi, opt.rho, opt.steps, opt.family);
  return r;
}

inline nlohmann::json complex_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

inline nlohmann::json vector_json(const Vector& v) {
  auto j = nlohmann::json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) j.push_back(complex_json(v(k)));
  return j;
}

inline nlohmann::json to_json(const PairingFit& f) {
  return {{"lambda0", complex_json(f.lambda0)},
          {"phi", f.phi},
          {"case", case_name(f.detected)},
          {"family_size", f.family_size},
          {"moving", f.moving},
          {"c_fit", f.c_fit},
          {"residual_slope", f.residual_slope},
          {"split_slope", f.split_slope},
          {"drift_slope", f.drift_slope},
          {"balanced", f.balanced},
          {"epsilon_grid", f.epsilon_grid}};
}

inline nlohmann::json to_json(const MonodromyReport& m) {
  nlohmann::json start = nlohmann::json::array();
  for (const auto& v : m.start_values) start.push_back(complex_json(v));
  return {{"rho", m.rho},
          {"steps", m.steps},
          {"refinements", m.refinements},
          {"start_values", start},
          {"permutation", m.permutation},
          {"cycles", m.cycles},
          {"cycle_lengths", m.cycle_lengths()}};
}

inline nlohmann::json to_json(const SpectralReport& r) {
  nlohmann::json j;
  j["name"] = r.name;
  j["hub"] = {{"x", r.family.x}, {"y", r.family.y}, {"standard", r.family.is_standard()}};
  auto groups = nlohmann::json::array();
  for (std::size_t i = 0; i < r.groups.size(); ++i) {
    const auto& g = r.groups[i];
    const auto& rc = r.classes[i];
    nlohmann::json bound = nlohmann::json::array();
    for (const auto& b : rc.bound_basis) bound.push_back(vector_json(b));
    nlohmann::json entry{{"lambda0", complex_json(g.lambda0)},
                         {"multiplicity", g.multiplicity()},
                         {"bound", bound},
                         {"active", rc.active ? vector_json(*rc.active) : nlohmann::json(nullptr)},
                         {"c", rc.c},
                         {"hub_mass", rc.hub_mass()}};
    groups.push_back(entry);
  }
  j["right_groups"] = groups;
  if (r.best) {
    j["best_target"] = {{"lambda0", complex_json(r.best->lambda0)},
                        {"c", r.best->c},
                        {"d", r.best->d},
                        {"sum_c2", r.best->sum_c2},
                        {"best_time_bound_factor", kPi * std::sqrt(static_cast<double>(r.best->d)) / (2.0 * std::sqrt(2.0))}};
  } else {
    j["best_target"] = nullptr;
  }
  auto fits = nlohmann::json::array();
  for (const auto& f : r.fits) fits.push_back(to_json(f));
  j["pairing_fits"] = fits;
  j["monodromy_phi"] = r.monodromy_phi;
  j["monodromy"] = r.monodromy ? to_json(*r.monodromy) : nlohmann::json(nullptr);
  j["warnings"] = r.warnings;
  return j;
}

}  // namespace starwalk
