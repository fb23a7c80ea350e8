// Declarative description of the marked subgraph G attached to the hub.
//
// G is a set of vertices, each with an ordered list of incoming and outgoing
// directed-edge labels and a local unitary scattering matrix. Row i of the
// matrix belongs to ports_out[i], column j to ports_in[j], so the vertex maps
//   |ports_in[j]>  ->  sum_i S(i, j) |ports_out[i]>.
//
// The hub-facing edge states carry fixed labels: "0->1" (hub to G, consumed by
// the attachment vertex) and "1->0" (G to hub, produced by it). Every other
// label is an interior edge state and must be produced by exactly one vertex
// and consumed by exactly one vertex. A label may be both produced and
// consumed by the same vertex, which encodes a one-step return arm.
#pragma once

#include "starwalk/core.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace starwalk {

inline constexpr std::string_view kHubToMarkedLabel = "0->1";
inline constexpr std::string_view kMarkedToHubLabel = "1->0";

struct VertexSpec {
  std::string id;
  std::vector<std::string> ports_in;
  std::vector<std::string> ports_out;
  Matrix scattering;
};

struct SubgraphSpec {
  std::string name;
  std::vector<VertexSpec> vertices;
  std::string attachment;
  std::vector<std::string> interior;

  /// Throws SpecError describing the first violated invariant.
  void validate() const;

  /// Number of right-side states: |0,1>, |1,0> and the interior.
  [[nodiscard]] int right_dimension() const { return 2 + static_cast<int>(interior.size()); }
};

inline void SubgraphSpec::validate() const {
  if (vertices.empty()) throw SpecError("subgraph has no vertices");

  std::set<std::string> ids;
  for (const auto& v : vertices) {
    if (v.id.empty()) throw SpecError("vertex with empty id");
    if (v.id == "0") throw SpecError("vertex id \"0\" is reserved for the hub");
    if (!ids.insert(v.id).second) throw SpecError("duplicate vertex id \"" + v.id + "\"");
  }
  if (!ids.contains(attachment))
    throw SpecError("attachment vertex \"" + attachment + "\" is not defined");

  const std::string hub_in(kHubToMarkedLabel), hub_out(kMarkedToHubLabel);
  std::set<std::string> interior_set;
  for (const auto& l : interior) {
    if (l == hub_in || l == hub_out)
      throw SpecError("hub-facing state \"" + l + "\" listed as interior");
    if (!interior_set.insert(l).second) throw SpecError("duplicate interior label \"" + l + "\"");
  }

  std::map<std::string, std::string> consumer, producer;
  for (const auto& v : vertices) {
    const auto d = static_cast<Eigen::Index>(v.ports_in.size());
    if (v.ports_in.empty()) throw SpecError("vertex \"" + v.id + "\" has no ports");
    if (v.ports_out.size() != v.ports_in.size())
      throw SpecError("vertex \"" + v.id + "\" has unequal in/out port counts");
    if (v.scattering.rows() != d || v.scattering.cols() != d)
      throw SpecError("vertex \"" + v.id + "\" scattering matrix has wrong shape");
    const double res = unitarity_residual(v.scattering);
    if (!(res < tol::kSpecUnitarity))
      throw SpecError("vertex \"" + v.id + "\" scattering matrix is not unitary (residual " +
                      std::to_string(res) + ")");
    for (const auto& p : v.ports_in) {
      if (!consumer.emplace(p, v.id).second)
        throw SpecError("edge state \"" + p + "\" is consumed by more than one vertex");
    }
    for (const auto& p : v.ports_out) {
      if (!producer.emplace(p, v.id).second)
        throw SpecError("edge state \"" + p + "\" is produced by more than one vertex");
    }
  }

  if (!consumer.contains(hub_in) || consumer.at(hub_in) != attachment)
    throw SpecError("the attachment vertex must consume \"0->1\"");
  if (!producer.contains(hub_out) || producer.at(hub_out) != attachment)
    throw SpecError("the attachment vertex must produce \"1->0\"");
  if (producer.contains(hub_in)) throw SpecError("\"0->1\" cannot be produced inside G");
  if (consumer.contains(hub_out)) throw SpecError("\"1->0\" cannot be consumed inside G");

  for (const auto& [label, v] : consumer) {
    if (label == hub_in) continue;
    if (!interior_set.contains(label))
      throw SpecError("consumed state \"" + label + "\" is not listed as interior");
    if (!producer.contains(label))
      throw SpecError("interior state \"" + label + "\" has no producing vertex");
  }
  for (const auto& [label, v] : producer) {
    if (label == hub_out) continue;
    if (!interior_set.contains(label))
      throw SpecError("produced state \"" + label + "\" is not listed as interior");
    if (!consumer.contains(label))
      throw SpecError("interior state \"" + label + "\" has no consuming vertex");
  }
  for (const auto& l : interior) {
    if (!consumer.contains(l)) throw SpecError("interior state \"" + l + "\" is never used");
  }
}

/// G is a single vertex reflecting |0,1> into |1,0> with the given phase.
inline SubgraphSpec reflector_spec(Complex reflection, std::string name = "reflector") {
  SubgraphSpec s;
  s.name = std::move(name);
  s.attachment = "1";
  VertexSpec v{"1", {std::string(kHubToMarkedLabel)}, {std::string(kMarkedToHubLabel)}, Matrix(1, 1)};
  v.scattering(0, 0) = reflection;
  s.vertices.push_back(std::move(v));
  return s;
}

/// The Grover graph: the marked vertex reflects with phase pi.
inline SubgraphSpec grover_spec() { return reflector_spec(Complex(-1.0, 0.0), "grover"); }

/// The bolo graph: vertex 1 scatters equally into the hub edge, a one-step
/// return arm "b" and a two-step arm through vertex A, which reflects with -1.
inline SubgraphSpec bolo_spec() {
  SubgraphSpec s;
  s.name = "bolo";
  s.attachment = "1";
  s.interior = {"A->1", "b", "1->A"};

  Matrix m(3, 3);
  // rows: b, 1->A, 1->0   cols: 0->1, A->1, b
  m << 2.0 / 3, 2.0 / 3, -1.0 / 3,
       2.0 / 3, -1.0 / 3, 2.0 / 3,
       -1.0 / 3, 2.0 / 3, 2.0 / 3;
  s.vertices.push_back({"1", {"0->1", "A->1", "b"}, {"b", "1->A", "1->0"}, m});

  Matrix a(1, 1);
  a(0, 0) = -1.0;
  s.vertices.push_back({"A", {"1->A"}, {"A->1"}, a});
  return s;
}

}  // namespace starwalk
