#pragma once

#include <Eigen/Dense>
#include <vector>

#include "switchcert/lie_algebra.hpp"
#include "switchcert/lyapunov.hpp"
#include "switchcert/matrix_family.hpp"

namespace switchcert {

/// Coordinates realizing Lie's theorem for a solvable family: transform T
/// with T A_p T^{-1} upper triangular for every p. T is a product of
/// unitary deflation steps, so its condition number is ~1.
struct TriangularizationResult {
  Eigen::MatrixXcd transform;
  std::vector<Eigen::MatrixXcd> triangular_modes;
  double residual = 0.0;   // max below-diagonal magnitude across modes
  double condition = 1.0;  // condition number of the transform
};

/// Unit vector v with A v = lambda_A v (within 1e-7 * ||A||) for every basis
/// matrix, found by intersecting eigenspaces across the basis elements.
/// Throws NotSolvable if the algebra is not solvable, NoCommonEigenvector on
/// numerical failure (carrying the best residual reached).
Eigen::VectorXcd common_eigenvector(const LieAlgebraBasis& algebra);

/// Recursive unitary deflation: find a common eigenvector, rotate it into the
/// first coordinate, recurse on the quotient block. Throws NotSolvable or
/// DeflationFailure.
TriangularizationResult simultaneous_triangularize(const MatrixFamily& family);

/// The end-to-end solvable-case certificate: a diagonal scaling D built in
/// triangular coordinates pulled back to P = Re(T^* D T), validated against
/// the original family.
QuadraticCertificate pullback_diagonal_certificate(const MatrixFamily& family,
                                                   const TriangularizationResult& tri);

}  // namespace switchcert
