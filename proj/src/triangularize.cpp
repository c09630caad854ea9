#include "switchcert/triangularize.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "switchcert/errors.hpp"

namespace switchcert {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

struct EigenvectorSearch {
  VectorXcd vector;
  double best_residual = std::numeric_limits<double>::infinity();
  bool found = false;
};

// Intersect eigenspaces across the given matrices: maintain an orthonormal
// S spanning the current candidate subspace, and for each matrix keep only
// the directions inside span(S) that are genuine eigenvectors. Eigenvalue
// candidates are processed by decreasing nullity of (A - lambda I)S, ties
// broken lexicographically on (real, imaginary).
EigenvectorSearch intersect_eigenspaces(const std::vector<MatrixXcd>& matrices) {
  EigenvectorSearch out;
  const int n = static_cast<int>(matrices.front().rows());
  MatrixXcd s = MatrixXcd::Identity(n, n);

  for (const auto& a : matrices) {
    const double scale = std::max(1.0, a.norm());
    const double cutoff = 1e-8 * scale;
    const int k = static_cast<int>(s.cols());

    Eigen::ComplexEigenSolver<MatrixXcd> es(a, /*computeEigenvectors=*/false);
    std::vector<std::complex<double>> candidates(es.eigenvalues().data(),
                                                 es.eigenvalues().data() + n);
    std::sort(candidates.begin(), candidates.end(), [](auto l, auto r) {
      if (l.real() != r.real()) return l.real() < r.real();
      return l.imag() < r.imag();
    });
    // Deduplicate eigenvalues clustered within the cutoff.
    std::vector<std::complex<double>> unique_vals;
    for (const auto& lam : candidates) {
      if (unique_vals.empty() || std::abs(lam - unique_vals.back()) > cutoff)
        unique_vals.push_back(lam);
    }

    int best_nullity = 0;
    MatrixXcd best_null;
    double best_sigma_min = std::numeric_limits<double>::infinity();
    for (const auto& lam : unique_vals) {
      MatrixXcd shifted = a * s;
      shifted -= lam * s;
      Eigen::JacobiSVD<MatrixXcd> svd(shifted, Eigen::ComputeFullV);
      const auto& sigma = svd.singularValues();
      best_sigma_min = std::min(best_sigma_min, sigma(k - 1));
      int nullity = 0;
      for (int i = k - 1; i >= 0 && sigma(i) <= cutoff; --i) ++nullity;
      if (nullity > best_nullity) {
        best_nullity = nullity;
        best_null = svd.matrixV().rightCols(nullity);
      }
    }
    if (best_nullity == 0) {
      out.best_residual = best_sigma_min;
      return out;
    }
    // New candidate subspace; columns stay orthonormal (V is unitary).
    s = s * best_null;
  }

  out.vector = s.col(0).normalized();
  // Final verification against every matrix.
  double worst = 0.0;
  for (const auto& a : matrices) {
    const VectorXcd av = a * out.vector;
    const std::complex<double> lam = out.vector.dot(av);
    worst = std::max(worst, (av - lam * out.vector).norm() / std::max(1.0, a.norm()));
  }
  out.best_residual = worst;
  out.found = worst <= 1e-7;
  return out;
}

// Unitary Householder-style matrix mapping e_1 to v (unit).
MatrixXcd unitary_from_first_column(const VectorXcd& v) {
  const int n = static_cast<int>(v.size());
  Eigen::HouseholderQR<MatrixXcd> qr(v);
  MatrixXcd q = qr.householderQ();
  // Fix the phase so that the first column equals v exactly.
  const std::complex<double> phase = q.col(0).dot(v);
  q.col(0) *= phase / std::abs(phase);
  return q;
}

}  // namespace

Eigen::VectorXcd common_eigenvector(const LieAlgebraBasis& algebra) {
  if (!is_solvable(algebra))
    throw NotSolvable("common_eigenvector: algebra is not solvable");
  std::vector<MatrixXcd> complex_basis;
  complex_basis.reserve(algebra.basis.size());
  for (const auto& b : algebra.basis) complex_basis.push_back(b.cast<std::complex<double>>());
  const EigenvectorSearch search = intersect_eigenspaces(complex_basis);
  if (!search.found)
    throw NoCommonEigenvector("common_eigenvector: intersection failed, best residual " +
                                  std::to_string(search.best_residual),
                              search.best_residual);
  return search.vector;
}

TriangularizationResult simultaneous_triangularize(const MatrixFamily& family) {
  const LieAlgebraBasis algebra = generate_algebra(family);
  if (!is_solvable(algebra))
    throw NotSolvable("simultaneous_triangularize: family does not generate a solvable algebra");

  const int n = family.n;
  std::vector<MatrixXcd> blocks;
  blocks.reserve(family.modes.size());
  for (const auto& a : family.modes) blocks.push_back(a.cast<std::complex<double>>());

  MatrixXcd q_total = MatrixXcd::Identity(n, n);
  for (int depth = 0; depth < n - 1; ++depth) {
    const int size = n - depth;
    const EigenvectorSearch search = intersect_eigenspaces(blocks);
    if (!search.found) {
      throw DeflationFailure("simultaneous_triangularize: no common eigenvector at depth " +
                                 std::to_string(depth) + ", best residual " +
                                 std::to_string(search.best_residual),
                             depth, search.best_residual);
    }
    const MatrixXcd u = unitary_from_first_column(search.vector);
    MatrixXcd u_full = MatrixXcd::Identity(n, n);
    u_full.bottomRightCorner(size, size) = u;
    q_total = q_total * u_full;
    for (auto& b : blocks) {
      const MatrixXcd transformed = u.adjoint() * b * u;
      b = transformed.bottomRightCorner(size - 1, size - 1);
    }
  }

  TriangularizationResult out;
  out.transform = q_total.adjoint();  // T A T^{-1} = Q^* A Q with unitary Q
  out.triangular_modes.reserve(family.modes.size());
  double residual = 0.0;
  const double scale = std::max(1.0, family.scale());
  for (const auto& a : family.modes) {
    MatrixXcd t = q_total.adjoint() * a.cast<std::complex<double>>() * q_total;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < i; ++j) residual = std::max(residual, std::abs(t(i, j)));
    }
    out.triangular_modes.push_back(std::move(t));
  }
  out.residual = residual;
  {
    Eigen::JacobiSVD<MatrixXcd> svd(out.transform);
    out.condition = svd.singularValues()(0) / svd.singularValues()(n - 1);
  }
  if (residual > 1e-7 * scale) {
    throw DeflationFailure("simultaneous_triangularize: residual " + std::to_string(residual) +
                               " exceeds 1e-7 * scale",
                           n - 1, residual);
  }
  return out;
}

QuadraticCertificate pullback_diagonal_certificate(const MatrixFamily& family,
                                                   const TriangularizationResult& tri) {
  // Work on exactly triangular copies so the scaling construction is not
  // confused by the (certified small) below-diagonal residue.
  std::vector<MatrixXcd> upper = tri.triangular_modes;
  for (auto& m : upper) {
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < i; ++j) m(i, j) = 0.0;
  }
  const Eigen::VectorXd d = triangular_diagonal_scaling(upper, family.tol);
  const MatrixXcd p_complex =
      tri.transform.adjoint() * d.cast<std::complex<double>>().asDiagonal() * tri.transform;
  const Eigen::MatrixXd p = 0.5 * (p_complex.real() + p_complex.real().transpose());
  return certificate_from_p(p, family);
}

}  // namespace switchcert
