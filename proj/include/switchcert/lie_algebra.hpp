#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "switchcert/matrix_family.hpp"

namespace switchcert {

/// Commutator [A,B] = AB - BA. Throws DimensionMismatch.
Eigen::MatrixXd bracket(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Orthonormal (trace inner product) spanning set of the matrix Lie algebra
/// generated by a family, with its bracket table.
///
/// structure(i,j) holds the coordinates of [basis[i], basis[j]] in the basis;
/// generation guarantees the reprojection residual is below tol.
struct LieAlgebraBasis {
  std::vector<Eigen::MatrixXd> basis;
  int dim = 0;
  double tol = kDefaultTol;

  const Eigen::VectorXd& structure(int i, int j) const { return structure_[i * dim + j]; }

  /// Coordinates of [x, y] for coordinate vectors x, y (bilinear in the table).
  Eigen::VectorXd bracket_coords(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;

  /// Matrix realized by a coordinate vector.
  Eigen::MatrixXd realize(const Eigen::VectorXd& coords) const;

  std::vector<Eigen::VectorXd> structure_;  // row-major dim x dim table
};

/// Verdict record for the generated algebra. The flags are monotone:
/// commuting => nilpotent => solvable => solvable_plus_compact.
struct AlgebraClassification {
  bool commuting = false;
  std::optional<int> nilpotency_order;
  bool solvable = false;
  bool solvable_plus_compact = false;
  std::vector<Eigen::MatrixXd> radical_basis;
  std::vector<double> killing_spectrum;  // of the quotient by the radical
  int algebra_dim = 0;
};

/// Smallest bracket-closed subspace containing the modes, breadth-first over
/// bracket depth. Deterministic for a fixed family and tolerance; dim <= n^2.
LieAlgebraBasis generate_algebra(const MatrixFamily& family);

/// Max over pairs of ||[A_i,A_j]||_F <= tol * (max mode norm)^2.
bool is_commuting(const MatrixFamily& family);

/// Smallest k with [g, g^(k)] = 0 (lower central series), or nullopt if the
/// series stabilizes at a nonzero subspace. Commuting algebras return 1.
std::optional<int> nilpotency_order(const LieAlgebraBasis& algebra);

/// True iff the derived series [g^(k-1), g^(k-1)] reaches zero.
bool is_solvable(const LieAlgebraBasis& algebra);

/// Full classification. The radical is computed as the Killing-orthogonal
/// complement of the derived algebra (Cartan's criterion); the compactness
/// test asks the Killing form of the quotient algebra to be negative definite.
AlgebraClassification classify(const MatrixFamily& family);

}  // namespace switchcert
