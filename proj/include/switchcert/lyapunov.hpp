#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "switchcert/matrix_family.hpp"

namespace switchcert {

/// Quadratic common Lyapunov certificate V(x) = x^T P x with
/// P A_p + A_p^T P <= -Q < 0 for every mode.
struct QuadraticCertificate {
  Eigen::MatrixXd P;
  std::vector<double> margins;  // largest eigenvalue of P A_p + A_p^T P per mode
  Eigen::MatrixXd q_floor;      // an explicit Q witnessing the inequalities
  double robustness_radius = 0.0;
};

/// Solves P A + A^T P = -Q for Hurwitz A and symmetric positive definite Q
/// through the Kronecker-sum linear system. Residual is checked against
/// 1e-8 * ||Q||_F. Throws NotHurwitz or NumericalFailure.
Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& a, const Eigen::MatrixXd& q);

/// Largest eigenvalue of P A_p + A_p^T P for each mode. The certificate is
/// valid iff P is positive definite and every margin is negative.
std::vector<double> check_common_lyapunov(const Eigen::MatrixXd& p, const MatrixFamily& family);

/// Wraps a candidate P into a certificate: computes margins, the tightest
/// scalar floor Q = (-max margin) I, and the robustness radius. Throws
/// CertificateInvalid if P is not positive definite or some margin is >= 0.
QuadraticCertificate certificate_from_p(const Eigen::MatrixXd& p, const MatrixFamily& family);

/// Narendra-Balakrishnan chain: P_1 A_1 + A_1^T P_1 = -I, then
/// P_i A_i + A_i^T P_i = -P_{i-1}; the certificate carries P_m. For a
/// commuting Hurwitz family the result is valid and independent of the mode
/// order. Throws CertificateInvalid (margins reported) when it is not.
QuadraticCertificate nb_chain(const MatrixFamily& family);

struct FindQclfOptions {
  int max_iters = 5000;
  double step = 0.1;
  std::uint64_t seed = 0;
  double eps = 1e-6;       // floor P >= eps I and required margin < -eps
  double decay = 0.999;    // geometric step decay
};

/// Subgradient heuristic over symmetric P with trace(P) = n, P >= eps I:
/// repeatedly steps against the worst mode's top eigendirection. Returns a
/// certificate iff all margins end below -eps; nullopt is NOT a proof of
/// infeasibility. Deterministic given (family, options).
std::optional<QuadraticCertificate> find_qclf(const MatrixFamily& family,
                                              const FindQclfOptions& options = {});

/// Positive diagonal scaling d with A_p^* D + D A_p negative definite for a
/// list of (complex) upper-triangular Hurwitz matrices: d_1 = 1, each later
/// entry doubled until all leading principal minors of -(A_p^* D + D A_p)
/// are positive for every mode.
Eigen::VectorXd triangular_diagonal_scaling(const std::vector<Eigen::MatrixXcd>& modes,
                                            double tol = kDefaultTol);

/// Diagonal-P certificate for a family of real upper-triangular Hurwitz
/// modes. Throws NotTriangular or NotHurwitz.
QuadraticCertificate diagonal_qclf_triangular(const MatrixFamily& family);

/// lambda_min(Q) / (2 lambda_max(P)), the perturbation norm below which the
/// certificate keeps certifying every perturbed family.
double robustness_radius(const QuadraticCertificate& cert);

}  // namespace switchcert
