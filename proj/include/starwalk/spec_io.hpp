// JSON (de)serialization of SubgraphSpec.
//
//   {"name": "bolo",
//    "vertices": [{"id": "1",
//                  "ports_in":  ["0->1", "A->1", "b"],
//                  "ports_out": ["b", "1->A", "1->0"],
//                  "matrix": [[re, im], ...]}, ...],
//    "attachment": "1",
//    "interior": ["A->1", "b", "1->A"]}
//
// "matrix" is the row-major list of d*d entries, rows following ports_out and
// columns following ports_in. A nested list of rows is accepted on input.
#pragma once

#include "starwalk/subgraph.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace starwalk {

namespace detail {

inline Complex complex_from_json(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw SpecError("matrix entry must be a number or a [re, im] pair");
}

inline bool is_entry(const nlohmann::json& j) {
  return j.is_number() || (j.is_array() && j.size() == 2 && j[0].is_number());
}

inline Matrix matrix_from_json(const nlohmann::json& j, std::size_t d, const std::string& id) {
  if (!j.is_array()) throw SpecError("vertex \"" + id + "\": matrix must be an array");
  Matrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  // A 2-entry row looks like a [re, im] pair, so go by count first.
  const bool nested = d > 1 ? j.size() == d : !j.empty() && j[0].is_array() && !is_entry(j[0]);
  if (nested) {
    if (j.size() != d) throw SpecError("vertex \"" + id + "\": matrix row count mismatch");
    for (std::size_t r = 0; r < d; ++r) {
      if (!j[r].is_array() || j[r].size() != d)
        throw SpecError("vertex \"" + id + "\": matrix column count mismatch");
      for (std::size_t c = 0; c < d; ++c)
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = complex_from_json(j[r][c]);
    }
  } else {
    if (j.size() != d * d)
      throw SpecError("vertex \"" + id + "\": matrix needs " + std::to_string(d * d) + " entries");
    for (std::size_t k = 0; k < d * d; ++k)
      m(static_cast<Eigen::Index>(k / d), static_cast<Eigen::Index>(k % d)) = complex_from_json(j[k]);
  }
  return m;
}

}  // namespace detail

/// Parses and validates a spec. Throws SpecError on any schema or invariant violation.
inline SubgraphSpec spec_from_json(const nlohmann::json& j) {
  SubgraphSpec s;
  try {
    s.name = j.value("name", std::string{});
    s.attachment = j.at("attachment").get<std::string>();
    s.interior = j.value("interior", std::vector<std::string>{});
    for (const auto& v : j.at("vertices")) {
      VertexSpec vs;
      vs.id = v.at("id").get<std::string>();
      vs.ports_in = v.at("ports_in").get<std::vector<std::string>>();
      vs.ports_out = v.at("ports_out").get<std::vector<std::string>>();
      vs.scattering = detail::matrix_from_json(v.at("matrix"), vs.ports_in.size(), vs.id);
      s.vertices.push_back(std::move(vs));
    }
  } catch (const nlohmann::json::exception& e) {
    throw SpecError(std::string("malformed subgraph description: ") + e.what());
  }
  s.validate();
  return s;
}

inline nlohmann::json spec_to_json(const SubgraphSpec& s) {
  nlohmann::json vertices = nlohmann::json::array();
  for (const auto& v : s.vertices) {
    nlohmann::json m = nlohmann::json::array();
    for (Eigen::Index r = 0; r < v.scattering.rows(); ++r)
      for (Eigen::Index c = 0; c < v.scattering.cols(); ++c)
        m.push_back({v.scattering(r, c).real(), v.scattering(r, c).imag()});
    vertices.push_back({{"id", v.id}, {"ports_in", v.ports_in}, {"ports_out", v.ports_out}, {"matrix", m}});
  }
  nlohmann::json j;
  if (!s.name.empty()) j["name"] = s.name;
  j["vertices"] = vertices;
  j["attachment"] = s.attachment;
  j["interior"] = s.interior;
  return j;
}

inline SubgraphSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open subgraph description \"" + path + "\"");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw SpecError("\"" + path + "\" is not valid JSON: " + e.what());
  }
  return spec_from_json(j);
}

}  // namespace starwalk
