// Edge-state bases and state vectors.
//
// Collapsed basis: [|out>, |in>, |0,1>, |1,0>, interior states of G...].
// Full basis: for every hub edge j = 1..N the pair |0,j>, |j,0>, followed by
// the interior states of each of the M copies of G. Edges 1..M are marked.
#pragma once

#include "starwalk/core.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace starwalk {

enum class BasisKind { full, collapsed };

namespace collapsed_index {
inline constexpr Eigen::Index kOut = 0;
inline constexpr Eigen::Index kIn = 1;
inline constexpr Eigen::Index kHubToMarked = 2;
inline constexpr Eigen::Index kMarkedToHub = 3;
inline constexpr Eigen::Index kInterior = 4;
}  // namespace collapsed_index

class EdgeBasis;
using BasisPtr = std::shared_ptr<const EdgeBasis>;

class EdgeBasis {
 public:
  static BasisPtr collapsed(std::vector<std::string> interior) {
    std::vector<std::string> labels{"out", "in", "0->1", "1->0"};
    labels.insert(labels.end(), interior.begin(), interior.end());
    return BasisPtr(new EdgeBasis(BasisKind::collapsed, std::move(labels), std::move(interior), 0, 0));
  }

  static BasisPtr full(std::vector<std::string> interior, std::int64_t N, std::int64_t M) {
    if (N < 1 || M < 0 || M > N) throw std::invalid_argument("EdgeBasis::full: need 0 <= M <= N");
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(2 * N + M * static_cast<std::int64_t>(interior.size())));
    for (std::int64_t j = 1; j <= N; ++j) {
      labels.push_back("0->" + std::to_string(j));
      labels.push_back(std::to_string(j) + "->0");
    }
    for (std::int64_t k = 1; k <= M; ++k)
      for (const auto& l : interior) labels.push_back("c" + std::to_string(k) + ":" + l);
    return BasisPtr(new EdgeBasis(BasisKind::full, std::move(labels), std::move(interior), N, M));
  }

  [[nodiscard]] BasisKind kind() const { return kind_; }
  [[nodiscard]] Eigen::Index size() const { return static_cast<Eigen::Index>(labels_.size()); }
  [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
  [[nodiscard]] const std::vector<std::string>& interior() const { return interior_; }
  [[nodiscard]] std::int64_t hub_degree() const { return N_; }
  [[nodiscard]] std::int64_t copies() const { return M_; }

  [[nodiscard]] bool contains(const std::string& label) const { return index_.contains(label); }
  [[nodiscard]] Eigen::Index index(const std::string& label) const {
    const auto it = index_.find(label);
    if (it == index_.end()) throw std::out_of_range("EdgeBasis: unknown label \"" + label + "\"");
    return it->second;
  }

  // Full-basis positions.
  [[nodiscard]] Eigen::Index hub_out(std::int64_t j) const { return 2 * (j - 1); }
  [[nodiscard]] Eigen::Index hub_in(std::int64_t j) const { return 2 * (j - 1) + 1; }
  [[nodiscard]] Eigen::Index copy_interior(std::int64_t k, Eigen::Index i) const {
    return 2 * N_ + (k - 1) * static_cast<Eigen::Index>(interior_.size()) + i;
  }

  [[nodiscard]] bool same_as(const EdgeBasis& other) const {
    return this == &other || (kind_ == other.kind_ && labels_ == other.labels_);
  }

 private:
  EdgeBasis(BasisKind kind, std::vector<std::string> labels, std::vector<std::string> interior,
            std::int64_t N, std::int64_t M)
      : kind_(kind), labels_(std::move(labels)), interior_(std::move(interior)), N_(N), M_(M) {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (!index_.emplace(labels_[i], static_cast<Eigen::Index>(i)).second)
        throw std::invalid_argument("EdgeBasis: duplicate label \"" + labels_[i] + "\"");
    }
  }

  BasisKind kind_;
  std::vector<std::string> labels_;
  std::vector<std::string> interior_;
  std::unordered_map<std::string, Eigen::Index> index_;
  std::int64_t N_;
  std::int64_t M_;
};

/// Amplitudes aligned with an EdgeBasis.
struct StateVector {
  Vector amplitudes;
  BasisPtr basis;

  [[nodiscard]] double norm() const { return amplitudes.norm(); }
  [[nodiscard]] Complex operator[](const std::string& label) const {
    return amplitudes(basis->index(label));
  }
  [[nodiscard]] Complex dot(const StateVector& other) const {
    if (!basis->same_as(*other.basis)) throw std::invalid_argument("StateVector::dot: basis mismatch");
    return amplitudes.dot(other.amplitudes);
  }
};

/// Embeds a right-side vector (ordered |0,1>, |1,0>, interior) into the collapsed basis.
inline StateVector embed_right(const BasisPtr& collapsed, const Vector& right) {
  StateVector s{Vector::Zero(collapsed->size()), collapsed};
  s.amplitudes.tail(right.size()) = right;
  return s;
}

}  // namespace starwalk
