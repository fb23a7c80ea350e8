// Dense eigendecomposition of unitary operators and eigenvalue clustering.
#pragma once

#include "starwalk/walk.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <numeric>
#include <sstream>

namespace starwalk {

/// Eigenvalues sorted by phase, with unit eigenvectors in the columns of
/// `vectors`. Each vector is gauged so that its largest component is real
/// and positive.
struct EigenSystem {
  std::vector<Complex> values;
  Matrix vectors;
  double max_residual = 0.0;

  [[nodiscard]] std::size_t size() const { return values.size(); }
  [[nodiscard]] Vector vector(std::size_t k) const { return vectors.col(static_cast<Eigen::Index>(k)); }
};

/// Multiplies v by a phase so that its largest-magnitude entry is real
/// positive. Near-ties go to the lowest index so the result is reproducible.
inline void fix_gauge(Eigen::Ref<Vector> v) {
  if (v.size() == 0) return;
  const double top = v.cwiseAbs().maxCoeff();
  if (top == 0.0) return;
  Eigen::Index k = 0;
  while (std::abs(v(k)) < top * (1.0 - 1e-9)) ++k;
  v *= std::conj(v(k)) / std::abs(v(k));
}

namespace detail {

inline void sort_by_phase(std::vector<Complex>& values, Matrix& vectors) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::arg(values[a]) < std::arg(values[b]);
  });
  std::vector<Complex> v2(values.size());
  Matrix m2(vectors.rows(), vectors.cols());
  for (std::size_t i = 0; i < order.size(); ++i) {
    v2[i] = values[order[i]];
    m2.col(static_cast<Eigen::Index>(i)) = vectors.col(static_cast<Eigen::Index>(order[i]));
  }
  values = std::move(v2);
  vectors = std::move(m2);
}

}  // namespace detail

/// Eigendecomposition of a unitary matrix through the complex Schur form.
/// For normal input the Schur basis is an orthonormal eigenbasis, which keeps
/// degenerate eigenspaces well conditioned. Falls back to the general solver
/// if the triangular factor is not diagonal enough.
inline EigenSystem eigendecompose(const Matrix& u) {
  const auto n = u.rows();
  if (u.cols() != n) throw std::invalid_argument("eigendecompose: matrix is not square");
  EigenSystem sys;
  if (n == 0) return sys;

  Eigen::ComplexSchur<Matrix> schur(u);
  if (schur.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "eigendecompose: Schur iteration did not converge (n=" << n
        << ", unitarity residual=" << unitarity_residual(u) << ")";
    throw NumericalError(msg.str());
  }
  const Matrix& t = schur.matrixT();
  sys.vectors = schur.matrixU();
  sys.values.resize(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) sys.values[static_cast<std::size_t>(k)] = t(k, k);

  auto residual = [&](const std::vector<Complex>& vals, const Matrix& vecs) {
    double r = 0.0;
    for (Eigen::Index k = 0; k < n; ++k)
      r = std::max(r, (u * vecs.col(k) - vals[static_cast<std::size_t>(k)] * vecs.col(k)).norm());
    return r;
  };
  sys.max_residual = residual(sys.values, sys.vectors);

  if (!(sys.max_residual < tol::kEigenResidual)) {
    Eigen::ComplexEigenSolver<Matrix> ces(u);
    if (ces.info() == Eigen::Success) {
      std::vector<Complex> vals(static_cast<std::size_t>(n));
      for (Eigen::Index k = 0; k < n; ++k) vals[static_cast<std::size_t>(k)] = ces.eigenvalues()(k);
      Matrix vecs = ces.eigenvectors();
      for (Eigen::Index k = 0; k < n; ++k) vecs.col(k).normalize();
      const double r = residual(vals, vecs);
      if (r < sys.max_residual) {
        sys.values = std::move(vals);
        sys.vectors = std::move(vecs);
        sys.max_residual = r;
      }
    }
  }
  if (!(sys.max_residual < tol::kEigenResidual)) {
    std::ostringstream msg;
    msg << "eigendecompose: eigen-residual " << sys.max_residual << " exceeds " << tol::kEigenResidual
        << " (n=" << n << ", unitarity residual=" << unitarity_residual(u) << ")";
    throw NumericalError(msg.str());
  }
  for (Eigen::Index k = 0; k < n; ++k) fix_gauge(sys.vectors.col(k));
  detail::sort_by_phase(sys.values, sys.vectors);
  return sys;
}

inline EigenSystem eigendecompose(const UnitaryOperator& u) { return eigendecompose(u.matrix); }

/// Eigenpairs of a general (not necessarily normal) matrix, e.g. U at complex
/// epsilon. Vectors are unit norm but not orthogonal.
inline EigenSystem eigendecompose_general(const Matrix& a) {
  Eigen::ComplexEigenSolver<Matrix> ces(a);
  if (ces.info() != Eigen::Success)
    throw NumericalError("eigendecompose_general: QR iteration did not converge (n=" + std::to_string(a.rows()) +
                         ")");
  EigenSystem sys;
  sys.values.resize(static_cast<std::size_t>(a.rows()));
  for (Eigen::Index k = 0; k < a.rows(); ++k) sys.values[static_cast<std::size_t>(k)] = ces.eigenvalues()(k);
  sys.vectors = ces.eigenvectors();
  for (Eigen::Index k = 0; k < a.rows(); ++k) {
    sys.vectors.col(k).normalize();
    sys.max_residual =
        std::max(sys.max_residual, (a * sys.vectors.col(k) - sys.values[static_cast<std::size_t>(k)] * sys.vectors.col(k)).norm());
  }
  return sys;
}

struct EigenvalueGroup {
  Complex lambda0;
  std::vector<std::size_t> members;

  [[nodiscard]] int multiplicity() const { return static_cast<int>(members.size()); }
};

/// Clusters eigenvalues by single linkage on the unit circle. Two clusters
/// whose closest members lie within 2*tol of each other are reported as
/// ambiguous rather than merged or split silently.
inline std::vector<EigenvalueGroup> group_eigenvalues(const EigenSystem& sys, double tol = tol::kCluster) {
  const std::size_t n = sys.values.size();
  std::vector<EigenvalueGroup> groups;
  if (n == 0) return groups;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::arg(sys.values[a]) < std::arg(sys.values[b]);
  });

  // Union-find over all pairs keeps the linkage exact near the -1 seam.
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(sys.values[i] - sys.values[j]) <= tol) parent[find(i)] = find(j);

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = std::abs(sys.values[i] - sys.values[j]);
      if (find(i) != find(j) && d <= 2.0 * tol) {
        std::ostringstream msg;
        msg << "group_eigenvalues: ambiguous clustering, eigenvalues " << sys.values[i] << " and "
            << sys.values[j] << " are " << d << " apart (tolerance " << tol << ")";
        throw NumericalError(msg.str());
      }
    }

  std::vector<std::size_t> root_slot(n, n);
  for (const std::size_t i : order) {
    const std::size_t r = find(i);
    if (root_slot[r] == n) {
      root_slot[r] = groups.size();
      groups.emplace_back();
    }
    groups[root_slot[r]].members.push_back(i);
  }
  for (auto& g : groups) {
    Complex sum = 0.0;
    for (const auto k : g.members) sum += sys.values[k] / std::abs(sys.values[k]);
    g.lambda0 = std::polar(1.0, std::arg(sum));
    std::sort(g.members.begin(), g.members.end());
  }
  std::stable_sort(groups.begin(), groups.end(), [](const EigenvalueGroup& a, const EigenvalueGroup& b) {
    return std::arg(a.lambda0) < std::arg(b.lambda0);
  });
  return groups;
}

}  // namespace starwalk
