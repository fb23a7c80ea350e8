// starwalk: command-line front end for the star-graph search library.
//
// Exit codes: 0 success, 1 usage or planning error, 2 invalid subgraph
// description, 3 numerical diagnostic, 4 oracle deviation above 1e-8.

#include "starwalk/starwalk.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

namespace sw = starwalk;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitSpec = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitOracle = 4;
constexpr double kOracleThreshold = 1e-8;

// ------------------------------------------------------------------ logging

enum class Level { error = 0, warn = 1, info = 2, debug = 3 };

Level log_level() {
  static const Level level = [] {
    const char* env = std::getenv("STARWALK_LOG");
    if (!env) return Level::warn;
    const std::string v(env);
    if (v == "error" || v == "quiet" || v == "0") return Level::error;
    if (v == "info" || v == "2") return Level::info;
    if (v == "debug" || v == "3") return Level::debug;
    return Level::warn;
  }();
  return level;
}

void log(Level lv, const std::string& msg) {
  static const char* names[] = {"error", "warn", "info", "debug"};
  if (lv <= log_level()) std::cerr << "starwalk: " << names[static_cast<int>(lv)] << ": " << msg << "\n";
}

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------- formatting

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string cnum(sw::Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

std::string short_complex(sw::Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.6g%+.6gi", z.real(), z.imag());
  return buf;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  [[nodiscard]] std::string csv() const {
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += cells[i];
      }
      out += '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out;
  }

  [[nodiscard]] json as_json() const {
    json arr = json::array();
    for (const auto& r : rows) {
      json o;
      for (std::size_t i = 0; i < header.size(); ++i) o[header[i]] = r[i];
      arr.push_back(o);
    }
    return arr;
  }
};

// ------------------------------------------------------------------- config

struct RunConfig {
  std::string command;
  std::string spec_path;
  std::string n_text = "1000000";
  std::int64_t m_copies = 1;
  std::string lambda_text = "auto";
  std::optional<double> phi;
  std::string delta_grid = "0,0.5b,1b,1.5b,2b";
  std::uint64_t seed = 1;
  std::int64_t shots = 0;
  unsigned jobs = 1;
  std::string out;
  std::string format = "json";
  std::int64_t steps = 200;
  bool log_spacing = false;
  int points = 5;
  double hub_x = sw::kPi;
  double hub_y = 0.0;
  // Test hook: offsets the collapsed left phase so the oracle must trip.
  double fault_phase = 0.0;

  [[nodiscard]] sw::HubFamily family() const { return {hub_x, hub_y}; }
};

std::vector<std::int64_t> parse_n(const RunConfig& cfg) {
  const auto& t = cfg.n_text;
  const auto dots = t.find("..");
  auto to_int = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return static_cast<std::int64_t>(v);
    } catch (const std::exception&) {
      throw UsageError("--n: cannot parse \"" + s + "\" as an integer");
    }
  };
  std::vector<std::int64_t> ns;
  if (dots == std::string::npos) {
    ns.push_back(to_int(t));
  } else {
    const auto lo = to_int(t.substr(0, dots)), hi = to_int(t.substr(dots + 2));
    if (lo > hi) throw UsageError("--n: range start exceeds its end");
    const int pts = std::max(cfg.points, 2);
    std::set<std::int64_t> seen;
    for (int i = 0; i < pts; ++i) {
      const double f = static_cast<double>(i) / (pts - 1);
      const double v = cfg.log_spacing ? std::exp(std::log(static_cast<double>(lo)) +
                                                   f * (std::log(static_cast<double>(hi)) - std::log(static_cast<double>(lo))))
                                       : static_cast<double>(lo) + f * static_cast<double>(hi - lo);
      const auto n = static_cast<std::int64_t>(std::llround(v));
      if (seen.insert(n).second) ns.push_back(n);
    }
  }
  for (const auto n : ns)
    if (n <= cfg.m_copies || cfg.m_copies < 1)
      throw UsageError("need N > M >= 1 (got N=" + std::to_string(n) + ", M=" + std::to_string(cfg.m_copies) + ")");
  return ns;
}

std::optional<sw::Complex> parse_lambda(const std::string& t) {
  if (t == "auto") return std::nullopt;
  try {
    const auto comma = t.find(',');
    if (comma == std::string::npos) return sw::Complex(std::stod(t), 0.0);
    return sw::Complex(std::stod(t.substr(0, comma)), std::stod(t.substr(comma + 1)));
  } catch (const std::exception&) {
    throw UsageError("--lambda: expected auto or \"re,im\", got \"" + t + "\"");
  }
}

/// Comma-separated radians; a trailing "b" scales by the boundary unit c*sqrt(2M/N).
std::vector<double> parse_delta_grid(const std::string& t, double boundary_unit) {
  std::vector<double> out;
  std::stringstream ss(t);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      if (tok.back() == 'b')
        out.push_back(std::stod(tok.substr(0, tok.size() - 1)) * boundary_unit);
      else
        out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw UsageError("--delta-grid: cannot parse \"" + tok + "\"");
    }
  }
  if (out.empty()) throw UsageError("--delta-grid: empty grid");
  return out;
}

sw::SubgraphSpec load(const RunConfig& cfg) {
  if (cfg.spec_path.empty()) throw UsageError("no subgraph description given (--spec PATH)");
  auto s = sw::load_spec(cfg.spec_path);
  if (s.name.empty()) s.name = std::filesystem::path(cfg.spec_path).stem().string();
  log(Level::info, "loaded \"" + s.name + "\" with " + std::to_string(s.vertices.size()) + " vertices");
  return s;
}

// ------------------------------------------------------------------- output

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write \"" + path + "\"");
  f << content;
}

/// Writes the table as CSV plus a JSON sidecar, or everything as one JSON
/// document. Without --out nothing is written.
void emit(const RunConfig& cfg, const Table& table, json sidecar) {
  if (cfg.out.empty()) return;
  if (cfg.format == "csv") {
    write_file(cfg.out, table.csv());
    std::filesystem::path side(cfg.out);
    side.replace_extension(".json");
    if (side.string() == cfg.out) side = cfg.out + ".sidecar.json";
    write_file(side.string(), sidecar.dump(2) + "\n");
    log(Level::info, "wrote " + cfg.out + " and " + side.string());
  } else {
    sidecar["rows"] = table.as_json();
    write_file(cfg.out, sidecar.dump(2) + "\n");
    log(Level::info, "wrote " + cfg.out);
  }
}

json config_json(const RunConfig& cfg) {
  return {{"command", cfg.command}, {"spec", cfg.spec_path}, {"n", cfg.n_text},       {"m_copies", cfg.m_copies},
          {"lambda", cfg.lambda_text}, {"seed", cfg.seed},     {"shots", cfg.shots},     {"hub_x", cfg.hub_x},
          {"hub_y", cfg.hub_y}};
}

// ----------------------------------------------------------------- commands

int run_analyze(const RunConfig& cfg) {
  const sw::CollapsedModel model(load(cfg));
  sw::AnalyzeOptions opt;
  opt.family = cfg.family();
  opt.phi = cfg.phi;
  opt.steps = static_cast<int>(std::max<std::int64_t>(cfg.steps, 360));
  const auto rep = sw::analyze_spec(model, opt);
  for (const auto& w : rep.warnings) log(Level::warn, w);

  Table t{{"lambda0", "multiplicity", "bound_dim", "active", "c", "hub_mass", "case", "c_fit", "residual_slope"}, {}};
  for (std::size_t i = 0; i < rep.classes.size(); ++i) {
    const auto& rc = rep.classes[i];
    const auto& f = rep.fits[i];
    t.rows.push_back({cnum(rc.lambda0), std::to_string(rep.groups[i].multiplicity()),
                      std::to_string(rc.bound_basis.size()), rc.has_active() ? "1" : "0", num(rc.c), num(rc.hub_mass()),
                      sw::case_name(f.detected), num(f.c_fit), num(f.residual_slope)});
  }
  json side = sw::to_json(rep);
  side["config"] = config_json(cfg);
  emit(cfg, t, side);

  std::ostringstream s;
  s << "analyze " << rep.name << ": " << rep.groups.size() << " eigenvalue groups";
  if (rep.best)
    s << ", d=" << rep.best->d << ", best lambda0=" << short_complex(rep.best->lambda0) << " c=" << rep.best->c
      << ", sum c^2=" << rep.best->sum_c2;
  else
    s << ", no active eigenvectors";
  std::cout << s.str() << "\n";
  return 0;
}

struct SearchRow {
  sw::SearchPlan plan;
  sw::SearchResult result;
  std::optional<sw::MeasurementCounts> counts;
};

Table search_table(const std::vector<SearchRow>& rows) {
  Table t{{"N", "M", "lambda0", "phi", "c", "m", "p_marked", "p_null", "p_unmarked", "overlap_r0"}, {}};
  for (const auto& r : rows)
    t.rows.push_back({std::to_string(r.plan.N), std::to_string(r.plan.M), cnum(r.plan.lambda0), num(r.plan.phi),
                      num(r.plan.c), std::to_string(r.plan.m), num(r.result.p_marked), num(r.result.p_null),
                      num(r.result.p_unmarked), num(r.result.overlap_r0)});
  return t;
}

json plan_json(const sw::SearchPlan& p) {
  return {{"N", p.N},
          {"M", p.M},
          {"lambda0", sw::complex_json(p.lambda0)},
          {"phi", p.phi},
          {"branch", p.branch},
          {"c", p.c},
          {"m", p.m},
          {"predicted_success", p.predicted_success},
          {"initial_state", sw::vector_json(p.initial.amplitudes)},
          {"r0", sw::vector_json(p.r0.amplitudes)}};
}

int run_search(const RunConfig& cfg) {
  const sw::CollapsedModel model(load(cfg));
  const auto ns = parse_n(cfg);
  const auto lambda = parse_lambda(cfg.lambda_text);
  const auto rows = sw::parallel_map(ns.size(), cfg.jobs, [&](std::size_t i) {
    SearchRow r;
    r.plan = sw::plan_search(model, ns[i], cfg.m_copies, lambda, cfg.family());
    r.result = sw::run_search(r.plan, model);
    if (cfg.shots > 0) r.counts = sw::sample_measurement(r.result, cfg.seed + i, cfg.shots);
    return r;
  });

  json side;
  side["config"] = config_json(cfg);
  side["runs"] = json::array();
  for (const auto& r : rows) {
    json run{{"plan", plan_json(r.plan)},
             {"p_marked", r.result.p_marked},
             {"p_null", r.result.p_null},
             {"p_unmarked", r.result.p_unmarked},
             {"overlap_r0", r.result.overlap_r0},
             {"final_state", sw::vector_json(r.result.final_state.amplitudes)}};
    if (r.counts)
      run["counts"] = {{"marked", r.counts->marked}, {"unmarked", r.counts->unmarked}, {"null", r.counts->null}};
    side["runs"].push_back(run);
  }
  emit(cfg, search_table(rows), side);

  std::ostringstream s;
  s << "search " << model.spec().name << ":";
  for (const auto& r : rows) {
    s << " [N=" << r.plan.N << " M=" << r.plan.M << " lambda0=" << short_complex(r.plan.lambda0)
      << " m=" << r.plan.m << " p_marked=" << r.result.p_marked;
    if (r.counts) s << " marked_shots=" << r.counts->marked << "/" << cfg.shots;
    s << "]";
  }
  std::cout << s.str() << "\n";
  return 0;
}

int run_sweep(const RunConfig& cfg) {
  const sw::CollapsedModel model(load(cfg));
  const auto ns = parse_n(cfg);
  const auto lambda = parse_lambda(cfg.lambda_text);

  struct Point {
    SearchRow row;
    std::vector<double> curve;
    std::int64_t peak_step = 0;
    double peak = 0.0;
  };
  const auto points = sw::parallel_map(ns.size(), cfg.jobs, [&](std::size_t i) {
    Point p;
    p.row.plan = sw::plan_search(model, ns[i], cfg.m_copies, lambda, cfg.family());
    const auto u = sw::plan_operator(p.row.plan, model);
    auto psi = p.row.plan.initial;
    const auto horizon = 2 * p.row.plan.m;
    for (std::int64_t k = 0; k <= horizon; ++k) {
      const auto r = sw::measure_state(psi, p.row.plan.r0, k);
      p.curve.push_back(r.p_marked);
      if (r.p_marked > p.peak) {
        p.peak = r.p_marked;
        p.peak_step = k;
      }
      if (k == p.row.plan.m) p.row.result = r;
      psi = sw::apply(u, psi);
    }
    return p;
  });

  Table t{{"N", "M", "lambda0", "phi", "c", "m", "p_marked", "p_null", "p_unmarked", "overlap_r0", "bound_1_minus_5_over_sqrtN",
           "peak_step", "peak_p_marked"},
          {}};
  json side;
  side["config"] = config_json(cfg);
  side["curves"] = json::array();
  double worst_margin = std::numeric_limits<double>::infinity();
  for (const auto& p : points) {
    const auto& pl = p.row.plan;
    const auto& r = p.row.result;
    const double bound = 1.0 - 5.0 / std::sqrt(static_cast<double>(pl.N));
    worst_margin = std::min(worst_margin, r.p_marked - bound);
    t.rows.push_back({std::to_string(pl.N), std::to_string(pl.M), cnum(pl.lambda0), num(pl.phi), num(pl.c),
                      std::to_string(pl.m), num(r.p_marked), num(r.p_null), num(r.p_unmarked), num(r.overlap_r0),
                      num(bound), std::to_string(p.peak_step), num(p.peak)});
    side["curves"].push_back({{"N", pl.N}, {"M", pl.M}, {"m", pl.m}, {"p_marked", p.curve}});
  }
  emit(cfg, t, side);
  std::cout << "sweep " << model.spec().name << ": " << points.size() << " points N=" << ns.front() << ".."
            << ns.back() << ", min(p_marked - (1 - 5/sqrt(N)))=" << worst_margin << "\n";
  return 0;
}

int run_tolerance(const RunConfig& cfg) {
  const sw::CollapsedModel model(load(cfg));
  const auto ns = parse_n(cfg);
  if (ns.size() != 1) throw UsageError("tolerance: --n takes a single value");
  const auto N = ns.front();
  const auto plan = sw::plan_search(model, N, cfg.m_copies, parse_lambda(cfg.lambda_text), cfg.family());
  const double unit = plan.c * std::sqrt(2.0 * static_cast<double>(cfg.m_copies) / static_cast<double>(N));
  const auto grid = parse_delta_grid(cfg.delta_grid, unit);
  const auto profiles = sw::parallel_map(grid.size(), cfg.jobs,
                                         [&](std::size_t i) { return sw::tolerance_point(model, plan, grid[i]); });

  Table t{{"N", "M", "delta", "t", "epsilon0_re", "epsilon0_im", "m_naive", "m_comp", "P_measured_naive",
           "P_measured_comp", "P_predicted_naive", "P_predicted_comp"},
          {}};
  json side;
  side["config"] = config_json(cfg);
  side["plan"] = plan_json(plan);
  side["boundary_delta"] = unit;
  side["profiles"] = json::array();
  double worst_gap = 0.0;
  for (const auto& p : profiles) {
    if (!p.epsilon0) log(Level::warn, "delta=" + num(p.delta) + ": no double root located");
    if (p.extrapolated) log(Level::warn, "delta=" + num(p.delta) + " is outside the small-detuning regime");
    const std::string e_re = p.epsilon0 ? num(p.epsilon0->real()) : "nan";
    const std::string e_im = p.epsilon0 ? num(p.epsilon0->imag()) : "nan";
    t.rows.push_back({std::to_string(p.N), std::to_string(p.M), num(p.delta), num(p.t), e_re, e_im,
                      std::to_string(p.m_naive), std::to_string(p.m_comp), num(p.P_measured_naive),
                      num(p.P_measured_comp), num(p.P_predicted_naive), num(p.P_predicted_comp)});
    worst_gap = std::max(worst_gap, std::abs(p.P_measured_naive - p.P_predicted_naive));
    side["profiles"].push_back({{"delta", p.delta},
                                {"phi", p.phi},
                                {"t", p.t},
                                {"epsilon0", p.epsilon0 ? sw::complex_json(*p.epsilon0) : json(nullptr)},
                                {"p_marked_naive", p.p_marked_naive},
                                {"extrapolated", p.extrapolated}});
  }
  emit(cfg, t, side);
  std::cout << "tolerance " << model.spec().name << ": N=" << N << " " << profiles.size()
            << " detunings, boundary delta=" << unit << ", max |P_measured - P_predicted| (naive)=" << worst_gap << "\n";
  return 0;
}

int run_oracle(const RunConfig& cfg) {
  const auto spec = load(cfg);
  const sw::CollapsedModel model(spec);
  const auto ns = parse_n(cfg);
  const double phi = cfg.phi.value_or(0.0);
  const auto family = cfg.family();

  struct Check {
    std::int64_t N = 0;
    double deviation = 0.0;
    double leakage = 0.0;
  };
  for (const auto n : ns)
    if (n > 64) throw UsageError("oracle-check: N must not exceed 64 (got " + std::to_string(n) + ")");
  const auto checks = sw::parallel_map(ns.size(), cfg.jobs, [&](std::size_t i) {
    const auto N = ns[i];
    const auto full = sw::build_full(spec, N, cfg.m_copies, family.x, family.y, phi);
    const auto coll = sw::build_collapsed(model, sw::hub_coefficients(N, cfg.m_copies, family.x, family.y),
                                        phi + cfg.fault_phase);
    std::mt19937_64 rng(cfg.seed + i);
    std::normal_distribution<double> g;
    sw::StateVector c{sw::Vector(model.dim()), model.basis()};
    for (Eigen::Index k = 0; k < model.dim(); ++k) c.amplitudes(k) = sw::Complex(g(rng), g(rng));
    c.amplitudes.normalize();
    auto f = sw::lift_collapsed_state(c, full.basis);
    Check out{N};
    for (std::int64_t k = 0; k < cfg.steps; ++k) {
      c = sw::apply(coll, c);
      f = sw::apply(full, f);
      const auto r = sw::restrict_full_state(f, model.basis());
      out.deviation = std::max(out.deviation, (r.state.amplitudes - c.amplitudes).norm());
      out.leakage = std::max(out.leakage, r.leakage);
    }
    return out;
  });

  Table t{{"N", "M", "steps", "max_deviation", "max_leakage"}, {}};
  json side;
  side["config"] = config_json(cfg);
  side["threshold"] = kOracleThreshold;
  double worst = 0.0;
  for (const auto& ch : checks) {
    t.rows.push_back({std::to_string(ch.N), std::to_string(cfg.m_copies), std::to_string(cfg.steps), num(ch.deviation),
                      num(ch.leakage)});
    worst = std::max({worst, ch.deviation, ch.leakage});
  }
  side["max_deviation"] = worst;
  emit(cfg, t, side);
  std::cout << "oracle-check " << model.spec().name << ": " << checks.size() << " sizes, " << cfg.steps
            << " steps, max deviation=" << worst << (worst > kOracleThreshold ? " FAIL" : " ok") << "\n";
  if (worst > kOracleThreshold) {
    log(Level::error, "full and collapsed evolution disagree by " + num(worst));
    return kExitOracle;
  }
  return 0;
}

int run_demo(const RunConfig& cfg) {
  const sw::CollapsedModel bolo(sw::bolo_spec()), grover(sw::grover_spec());
  const auto rep = sw::analyze_spec(bolo);
  const auto bolo_plan = sw::plan_search(bolo, 1000000, 1);
  const auto bolo_run = sw::run_search(bolo_plan, bolo);
  const auto grover_plan = sw::plan_search(grover, 10000, 1);
  const auto grover_run = sw::run_search(grover_plan, grover);
  const double unit = grover_plan.c * std::sqrt(2.0 / 10000.0);
  const std::vector<double> grid{0.0, 0.5 * unit, 1.0 * unit, 1.5 * unit};
  const auto tol = sw::tolerance_sweep(grover, 10000, 1, std::nullopt, grid);

  Table t = search_table({{bolo_plan, bolo_run, std::nullopt}, {grover_plan, grover_run, std::nullopt}});
  json side;
  side["config"] = config_json(cfg);
  side["bolo_report"] = sw::to_json(rep);
  side["tolerance"] = json::array();
  for (const auto& p : tol)
    side["tolerance"].push_back({{"delta", p.delta},
                                 {"t", p.t},
                                 {"P_measured_naive", p.P_measured_naive},
                                 {"P_predicted_naive", p.P_predicted_naive}});
  emit(cfg, t, side);
  std::cout << "demo: bolo N=10^6 m=" << bolo_plan.m << " p_marked=" << bolo_run.p_marked
            << "; grover N=10^4 m=" << grover_plan.m << " p_marked=" << grover_run.p_marked
            << "; grover detuned t=1/2 P=" << tol[2].P_measured_naive << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-walk search on star graphs with a marked subgraph"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub, bool needs_spec) {
    auto* spec = sub->add_option("spec_file", cfg.spec_path, "Subgraph description (JSON)");
    sub->add_option("--spec", cfg.spec_path, "Subgraph description (JSON)")->excludes(spec);
    if (!needs_spec) return;
    sub->add_option("--n", cfg.n_text, "Hub degree N, or a range A..B");
    sub->add_option("--m-copies", cfg.m_copies, "Number of marked copies M")->check(CLI::PositiveNumber);
    sub->add_option("--lambda", cfg.lambda_text, "Target eigenvalue: auto or \"re,im\"");
    sub->add_option("--phi", cfg.phi, "Left reflection phase (radians)");
    sub->add_option("--delta-grid", cfg.delta_grid,
                    "Comma-separated detunings in radians; suffix b scales by c*sqrt(2M/N)");
    sub->add_option("--seed", cfg.seed, "Random seed");
    sub->add_option("--shots", cfg.shots, "Measurement shots to sample");
    sub->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--steps", cfg.steps, "Evolution steps (oracle-check) or monodromy steps (analyze)");
    sub->add_flag("--log", cfg.log_spacing, "Logarithmic spacing for an N range");
    sub->add_option("--points", cfg.points, "Number of points in an N range")->check(CLI::PositiveNumber);
    sub->add_option("--hub-x", cfg.hub_x, "Generalized hub phase x (pi selects the standard hub)");
    sub->add_option("--hub-y", cfg.hub_y, "Generalized hub phase y");
    sub->add_option("--fault-phase", cfg.fault_phase)->group("");
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "Output path");
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  };

  struct Cmd {
    const char* name;
    const char* help;
    int (*run)(const RunConfig&);
  };
  const Cmd cmds[] = {
      {"analyze", "Eigenvalue groups, bound/active split, couplings, pairing and monodromy", run_analyze},
      {"search", "Plan and run one search per N", run_search},
      {"sweep", "Scan N and record p_marked curves", run_sweep},
      {"tolerance", "Detuning sweep at fixed N", run_tolerance},
      {"oracle-check", "Compare full and collapsed evolution", run_oracle},
      {"demo", "Run the bundled bolo and Grover examples", run_demo},
  };
  std::vector<std::pair<CLI::App*, const Cmd*>> subs;
  for (const auto& c : cmds) {
    auto* sub = app.add_subcommand(c.name, c.help);
    add_common(sub, std::string(c.name) != "demo");
    add_output(sub);
    subs.emplace_back(sub, &c);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    for (const auto& [sub, c] : subs) {
      if (!sub->parsed()) continue;
      cfg.command = c->name;
      return c->run(cfg);
    }
  } catch (const sw::SpecError& e) {
    log(Level::error, e.what());
    return kExitSpec;
  } catch (const sw::NumericalError& e) {
    log(Level::error, e.what());
    return kExitNumerical;
  } catch (const sw::PlanningError& e) {
    log(Level::error, e.what());
    return kExitUsage;
  } catch (const UsageError& e) {
    log(Level::error, e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    log(Level::error, e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
