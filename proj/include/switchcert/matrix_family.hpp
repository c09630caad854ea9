#pragma once

#include <Eigen/Dense>
#include <vector>

namespace switchcert {

/// Default relative tolerance for rank / independence / closure decisions.
inline constexpr double kDefaultTol = 1e-9;

/// A finite family of real n-by-n mode matrices A_p, p = 1..m, together with
/// the numerical tolerance used by every decision made about it.
struct MatrixFamily {
  int n = 0;
  std::vector<Eigen::MatrixXd> modes;
  double tol = kDefaultTol;

  MatrixFamily() = default;
  MatrixFamily(std::vector<Eigen::MatrixXd> mode_list, double tolerance = kDefaultTol);

  int mode_count() const { return static_cast<int>(modes.size()); }

  /// Largest Frobenius norm over the modes (scale for relative thresholds).
  double scale() const;
};

/// Spectral norm (largest singular value).
double operator_norm(const Eigen::MatrixXd& a);

/// True iff all eigenvalues of `a` have real part < -1e-10 * (1 + ||a||_2).
bool is_hurwitz(const Eigen::MatrixXd& a);

/// Throws NotHurwitz naming the offending mode index (0-based) otherwise.
void require_hurwitz(const MatrixFamily& family);

}  // namespace switchcert
