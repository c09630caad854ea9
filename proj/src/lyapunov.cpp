#include "switchcert/lyapunov.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "switchcert/errors.hpp"

namespace switchcert {

namespace {

Eigen::VectorXd vectorize(const Eigen::MatrixXd& m) {
  return Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
}

double lambda_min(const Eigen::MatrixXd& sym) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double lambda_max(const Eigen::MatrixXd& sym) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

}  // namespace

Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& a, const Eigen::MatrixXd& q) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n || q.rows() != n || q.cols() != n)
    throw DimensionMismatch("solve_lyapunov: A and Q must be square of equal dimension");
  if ((q - q.transpose()).norm() > 1e-10 * (1.0 + q.norm()))
    throw InvalidArgument("solve_lyapunov: Q must be symmetric");
  if (!is_hurwitz(a)) throw NotHurwitz("solve_lyapunov: A is not Hurwitz");

  // vec(PA + A^T P) = (A^T (x) I + I (x) A^T) vec(P)
  Eigen::MatrixXd lhs = Eigen::MatrixXd::Zero(n * n, n * n);
  const Eigen::MatrixXd at = a.transpose();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // kron(A^T, I): block (j,i) of size n gets at(j... ) -- expand directly.
      for (int k = 0; k < n; ++k) {
        lhs(i + n * j, i + n * k) += at(j, k);  // kron(A^T, I)
        lhs(i + n * j, k + n * j) += at(i, k);  // kron(I, A^T)
      }
    }
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(lhs);
  const Eigen::VectorXd vec_p = lu.solve(-vectorize(q));
  if (!vec_p.allFinite()) throw NumericalFailure("solve_lyapunov: linear solve failed");

  Eigen::MatrixXd p = Eigen::Map<const Eigen::MatrixXd>(vec_p.data(), n, n);
  p = 0.5 * (p + p.transpose());

  const double residual = (p * a + a.transpose() * p + q).norm();
  if (residual > 1e-8 * q.norm())
    throw NumericalFailure("solve_lyapunov: residual " + std::to_string(residual) +
                           " exceeds 1e-8 * ||Q||_F");
  if (lambda_min(p) <= 0)
    throw NumericalFailure("solve_lyapunov: solution is not positive definite");
  return p;
}

std::vector<double> check_common_lyapunov(const Eigen::MatrixXd& p, const MatrixFamily& family) {
  if (p.rows() != family.n || p.cols() != family.n)
    throw DimensionMismatch("check_common_lyapunov: P has wrong dimension");
  const Eigen::MatrixXd ps = 0.5 * (p + p.transpose());
  std::vector<double> margins;
  margins.reserve(family.mode_count());
  for (const auto& a : family.modes) {
    margins.push_back(lambda_max(ps * a + a.transpose() * ps));
  }
  return margins;
}

QuadraticCertificate certificate_from_p(const Eigen::MatrixXd& p, const MatrixFamily& family) {
  QuadraticCertificate cert;
  cert.P = 0.5 * (p + p.transpose());
  if (lambda_min(cert.P) <= 0)
    throw CertificateInvalid("certificate_from_p: P is not positive definite");
  cert.margins = check_common_lyapunov(cert.P, family);
  const double worst = *std::max_element(cert.margins.begin(), cert.margins.end());
  if (worst >= 0)
    throw CertificateInvalid("certificate_from_p: worst margin " + std::to_string(worst) +
                             " is not negative");
  // Tightest scalar floor: P A_p + A_p^T P <= worst I = -q_floor for all p,
  // and no valid Q can have a larger smallest eigenvalue than -worst.
  cert.q_floor = -worst * Eigen::MatrixXd::Identity(family.n, family.n);
  cert.robustness_radius = robustness_radius(cert);
  return cert;
}

QuadraticCertificate nb_chain(const MatrixFamily& family) {
  require_hurwitz(family);
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Identity(family.n, family.n);
  Eigen::MatrixXd p;
  for (const auto& a : family.modes) {
    p = solve_lyapunov(a, rhs);
    rhs = p;
  }
  return certificate_from_p(p, family);  // CertificateInvalid when margins fail
}

std::optional<QuadraticCertificate> find_qclf(const MatrixFamily& family,
                                              const FindQclfOptions& options) {
  require_hurwitz(family);
  const int n = family.n;

  auto project = [&](Eigen::MatrixXd p) {
    p = 0.5 * (p + p.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(p);
    const Eigen::VectorXd clamped = es.eigenvalues().cwiseMax(options.eps);
    p = es.eigenvectors() * clamped.asDiagonal() * es.eigenvectors().transpose();
    return (static_cast<double>(n) / p.trace()) * p;
  };

  auto run = [&](Eigen::MatrixXd p, int iters, double step0) -> std::optional<Eigen::MatrixXd> {
    double step = step0;
    for (int it = 0; it < iters; ++it) {
      int worst = 0;
      double worst_margin = -std::numeric_limits<double>::infinity();
      Eigen::VectorXd worst_vec;
      for (int q = 0; q < family.mode_count(); ++q) {
        const Eigen::MatrixXd m = p * family.modes[q] + family.modes[q].transpose() * p;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
        const double margin = es.eigenvalues()(n - 1);
        if (margin > worst_margin) {
          worst_margin = margin;
          worst = q;
          worst_vec = es.eigenvectors().col(n - 1);
        }
      }
      if (worst_margin < -options.eps) return p;
      // d margin / dP = sym(v (A v)^T) for the worst mode's top eigenpair.
      const Eigen::VectorXd av = family.modes[worst] * worst_vec;
      Eigen::MatrixXd grad = 0.5 * (worst_vec * av.transpose() + av * worst_vec.transpose());
      const double gnorm = grad.norm();
      if (gnorm < 1e-15) return std::nullopt;
      p = project(p - (step / gnorm) * grad);
      step *= options.decay;
    }
    return std::nullopt;
  };

  // Deterministic start: average of the single-mode Lyapunov solutions.
  Eigen::MatrixXd p0 = Eigen::MatrixXd::Zero(n, n);
  for (const auto& a : family.modes)
    p0 += solve_lyapunov(a, Eigen::MatrixXd::Identity(n, n));
  p0 = project(p0);

  const int first = options.max_iters / 2;
  if (auto p = run(p0, first, options.step)) {
    return certificate_from_p(*p, family);
  }

  // One seeded random restart with the remaining budget.
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd w(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w(i, j) = gauss(rng);
  if (auto p = run(project(w * w.transpose()), options.max_iters - first, options.step)) {
    return certificate_from_p(*p, family);
  }
  return std::nullopt;
}

Eigen::VectorXd triangular_diagonal_scaling(const std::vector<Eigen::MatrixXcd>& modes,
                                            double tol) {
  if (modes.empty()) throw InvalidArgument("triangular_diagonal_scaling: no modes");
  const int n = static_cast<int>(modes.front().rows());
  for (const auto& m : modes) {
    if (m.rows() != n || m.cols() != n)
      throw DimensionMismatch("triangular_diagonal_scaling: inconsistent dimensions");
    for (int i = 0; i < n; ++i) {
      if (m(i, i).real() >= -tol * (1.0 + m.norm()))
        throw NotHurwitz("triangular_diagonal_scaling: diagonal entry with real part >= 0");
    }
  }

  Eigen::VectorXd d = Eigen::VectorXd::Ones(n);
  auto leading_minors_positive = [&](int upto) {
    for (const auto& m : modes) {
      const Eigen::MatrixXcd block = m.topLeftCorner(upto, upto);
      Eigen::MatrixXcd neg =
          -(block.adjoint() * d.head(upto).asDiagonal().toDenseMatrix().cast<std::complex<double>>() +
            d.head(upto).asDiagonal().toDenseMatrix().cast<std::complex<double>>() * block);
      Eigen::LLT<Eigen::MatrixXcd> llt(0.5 * (neg + neg.adjoint()));
      if (llt.info() != Eigen::Success) return false;
    }
    return true;
  };

  if (!leading_minors_positive(1))
    throw NumericalFailure("triangular_diagonal_scaling: 1x1 block not positive");
  for (int k = 2; k <= n; ++k) {
    int doublings = 0;
    while (!leading_minors_positive(k)) {
      d(k - 1) *= 2.0;
      if (++doublings > 2000)
        throw NumericalFailure("triangular_diagonal_scaling: no positive scaling found");
    }
  }
  return d;
}

QuadraticCertificate diagonal_qclf_triangular(const MatrixFamily& family) {
  const double scale = family.scale();
  for (const auto& a : family.modes) {
    for (int i = 0; i < family.n; ++i) {
      for (int j = 0; j < i; ++j) {
        if (std::abs(a(i, j)) > family.tol * (1.0 + scale))
          throw NotTriangular("diagonal_qclf_triangular: below-diagonal entry at (" +
                              std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      }
    }
  }
  require_hurwitz(family);

  std::vector<Eigen::MatrixXcd> complex_modes;
  complex_modes.reserve(family.modes.size());
  for (const auto& a : family.modes) complex_modes.push_back(a.cast<std::complex<double>>());
  const Eigen::VectorXd d = triangular_diagonal_scaling(complex_modes, family.tol);
  return certificate_from_p(Eigen::MatrixXd(d.asDiagonal()), family);
}

double robustness_radius(const QuadraticCertificate& cert) {
  return lambda_min(cert.q_floor) / (2.0 * lambda_max(cert.P));
}

}  // namespace switchcert
