#include "switchcert/matrix_family.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <string>

#include "switchcert/errors.hpp"

namespace switchcert {

MatrixFamily::MatrixFamily(std::vector<Eigen::MatrixXd> mode_list, double tolerance)
    : modes(std::move(mode_list)), tol(tolerance) {
  if (modes.empty()) throw InvalidArgument("MatrixFamily: at least one mode required");
  if (tol < 0) throw InvalidArgument("MatrixFamily: tolerance must be nonnegative");
  n = static_cast<int>(modes.front().rows());
  if (n < 1) throw InvalidArgument("MatrixFamily: empty mode matrix");
  for (std::size_t p = 0; p < modes.size(); ++p) {
    const auto& a = modes[p];
    if (a.rows() != n || a.cols() != n)
      throw DimensionMismatch("MatrixFamily: mode " + std::to_string(p + 1) +
                              " is not " + std::to_string(n) + "x" + std::to_string(n));
    if (!a.allFinite())
      throw InvalidArgument("MatrixFamily: mode " + std::to_string(p + 1) +
                            " has non-finite entries");
  }
}

double MatrixFamily::scale() const {
  double s = 0.0;
  for (const auto& a : modes) s = std::max(s, a.norm());
  return s;
}

double operator_norm(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Eigen::MatrixXd>(a).singularValues()(0);
}

bool is_hurwitz(const Eigen::MatrixXd& a) {
  const double margin = 1e-10 * (1.0 + operator_norm(a));
  Eigen::EigenSolver<Eigen::MatrixXd> es(a, /*computeEigenvectors=*/false);
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()(i).real() >= -margin) return false;
  }
  return true;
}

void require_hurwitz(const MatrixFamily& family) {
  for (int p = 0; p < family.mode_count(); ++p) {
    if (!is_hurwitz(family.modes[p]))
      throw NotHurwitz("mode " + std::to_string(p + 1) + " is not Hurwitz");
  }
}

}  // namespace switchcert
