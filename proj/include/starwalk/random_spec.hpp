// Random subgraph generator for property tests and the demo command.
#pragma once

#include "starwalk/eigen.hpp"

#include <random>

namespace starwalk {

/// Haar-distributed unitary of size d.
inline Matrix haar_unitary(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix z(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) z(i, j) = Complex(normal(rng), normal(rng)) / std::sqrt(2.0);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    if (std::abs(rjj) > 0.0) q.col(j) *= rjj / std::abs(rjj);
  }
  return q;
}

/// The diffusive scattering matrix 2/d - delta_ij.
inline Matrix diffusive_matrix(int d) {
  Matrix m = Matrix::Constant(d, d, Complex(2.0 / d, 0.0));
  m.diagonal().array() -= 1.0;
  return m;
}

struct RandomSpecOptions {
  int max_vertices = 4;
  double extra_edge_probability = 0.3;
  double self_arm_probability = 0.3;
  double diffusive_probability = 0.3;
  /// Minimum distance between distinct eigenvalues of the right block of U_0;
  /// candidates below it are discarded and redrawn.
  double min_gap = 0.05;
  int max_attempts = 1000;
};

namespace detail {

inline SubgraphSpec draw_spec(std::mt19937_64& rng, const RandomSpecOptions& opt) {
  std::uniform_int_distribution<int> count(1, opt.max_vertices);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = count(rng);

  std::vector<std::vector<std::string>> ins(static_cast<std::size_t>(n)), outs(static_cast<std::size_t>(n));
  std::vector<std::string> interior;
  auto vid = [](int v) { return std::to_string(v + 1); };
  auto connect = [&](int a, int b, const std::string& arrow) {
    const std::string ab = vid(a) + arrow + vid(b), ba = vid(b) + arrow + vid(a);
    outs[static_cast<std::size_t>(a)].push_back(ab);
    ins[static_cast<std::size_t>(b)].push_back(ab);
    outs[static_cast<std::size_t>(b)].push_back(ba);
    ins[static_cast<std::size_t>(a)].push_back(ba);
    interior.push_back(ab);
    interior.push_back(ba);
  };

  ins[0].push_back(std::string(kHubToMarkedLabel));
  outs[0].push_back(std::string(kMarkedToHubLabel));
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<int> parent(0, v - 1);
    connect(parent(rng), v, "->");
  }
  if (n >= 2 && unit(rng) < opt.extra_edge_probability) {
    std::uniform_int_distribution<int> pick(0, n - 1);
    const int a = pick(rng);
    int b = pick(rng);
    if (a == b) b = (a + 1) % n;
    connect(a, b, "=>");
  }
  if (unit(rng) < opt.self_arm_probability) {
    std::uniform_int_distribution<int> pick(0, n - 1);
    const int v = pick(rng);
    const std::string arm = "arm" + vid(v);
    ins[static_cast<std::size_t>(v)].push_back(arm);
    outs[static_cast<std::size_t>(v)].push_back(arm);
    interior.push_back(arm);
  }

  SubgraphSpec s;
  s.name = "random";
  s.attachment = "1";
  s.interior = interior;
  for (int v = 0; v < n; ++v) {
    const int d = static_cast<int>(ins[static_cast<std::size_t>(v)].size());
    Matrix m = unit(rng) < opt.diffusive_probability ? diffusive_matrix(d) : haar_unitary(d, rng);
    s.vertices.push_back({vid(v), ins[static_cast<std::size_t>(v)], outs[static_cast<std::size_t>(v)], m});
  }
  return s;
}

/// Smallest distance between eigenvalues of `m` that are not equal within
/// the clustering tolerance.
inline double distinct_gap(const Matrix& m) {
  const auto sys = eigendecompose(m);
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sys.size(); ++i)
    for (std::size_t j = i + 1; j < sys.size(); ++j) {
      const double d = std::abs(sys.values[i] - sys.values[j]);
      if (d > tol::kCluster) gap = std::min(gap, d);
    }
  return gap;
}

}  // namespace detail

/// A random valid subgraph: a random tree on 1..max_vertices vertices rooted
/// at the attachment vertex, optionally with one extra edge and one
/// single-step return arm, each vertex scattering with a Haar-random or a
/// diffusive unitary. Deterministic for a given generator state.
inline SubgraphSpec random_spec(std::mt19937_64& rng, const RandomSpecOptions& opt = {}) {
  for (int attempt = 0; attempt < opt.max_attempts; ++attempt) {
    auto s = detail::draw_spec(rng, opt);
    s.validate();
    const Matrix right = CollapsedModel(s).right_block0();
    if (detail::distinct_gap(right) >= opt.min_gap) return s;
  }
  throw std::runtime_error("random_spec: no candidate met the eigenvalue gap requirement");
}

}  // namespace starwalk
