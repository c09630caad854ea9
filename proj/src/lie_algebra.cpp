#include "switchcert/lie_algebra.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "switchcert/errors.hpp"

namespace switchcert {

namespace {

// Trace inner product <X,Y> = tr(X^T Y); the basis is kept orthonormal
// under it so coordinates are plain Euclidean.
double trace_dot(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  return (x.array() * y.array()).sum();
}

// Gram-Schmidt residual of `c` against the current basis, with one
// re-orthogonalization pass for stability.
Eigen::MatrixXd project_residual(const std::vector<Eigen::MatrixXd>& basis,
                                 const Eigen::MatrixXd& c) {
  Eigen::MatrixXd r = c;
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis) r -= trace_dot(b, r) * b;
  }
  return r;
}

Eigen::VectorXd coords_of(const std::vector<Eigen::MatrixXd>& basis,
                          const Eigen::MatrixXd& c) {
  Eigen::VectorXd v(static_cast<int>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) v(static_cast<int>(i)) = trace_dot(basis[i], c);
  return v;
}

// Orthonormal basis of the column span, rank decided at tol relative to the
// largest singular value (floored at 1 so zero input stays rank 0).
Eigen::MatrixXd column_span(const Eigen::MatrixXd& cols, double tol) {
  if (cols.cols() == 0) return Eigen::MatrixXd(cols.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(cols, Eigen::ComputeThinU);
  const double cutoff = tol * std::max(1.0, svd.singularValues()(0));
  int rank = 0;
  while (rank < svd.singularValues().size() && svd.singularValues()(rank) > cutoff) ++rank;
  return svd.matrixU().leftCols(rank);
}

}  // namespace

Eigen::MatrixXd bracket(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw DimensionMismatch("bracket: operands must be square of equal dimension");
  return a * b - b * a;
}

Eigen::VectorXd LieAlgebraBasis::bracket_coords(const Eigen::VectorXd& x,
                                                const Eigen::VectorXd& y) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim);
  for (int i = 0; i < dim; ++i) {
    if (x(i) == 0.0) continue;
    for (int j = 0; j < dim; ++j) {
      if (y(j) == 0.0) continue;
      out += x(i) * y(j) * structure(i, j);
    }
  }
  return out;
}

Eigen::MatrixXd LieAlgebraBasis::realize(const Eigen::VectorXd& coords) const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(basis.front().rows(), basis.front().cols());
  for (int i = 0; i < dim; ++i) m += coords(i) * basis[i];
  return m;
}

LieAlgebraBasis generate_algebra(const MatrixFamily& family) {
  const int max_dim = family.n * family.n;
  LieAlgebraBasis out;
  out.tol = family.tol;

  auto try_add = [&](const Eigen::MatrixXd& c) -> bool {
    const Eigen::MatrixXd r = project_residual(out.basis, c);
    if (r.norm() <= family.tol * (1.0 + c.norm())) return false;
    out.basis.push_back(r / r.norm());
    return true;
  };

  std::vector<int> fresh;
  for (const auto& a : family.modes) {
    if (try_add(a)) fresh.push_back(static_cast<int>(out.basis.size()) - 1);
  }
  if (out.basis.empty()) {
    // All modes are (numerically) zero; keep a one-element basis so that the
    // structure table is well formed.
    out.basis.push_back(Eigen::MatrixXd::Zero(family.n, family.n));
    out.basis.back()(0, 0) = 1.0;
  }

  // Breadth-first closure: bracket each new layer against everything so far.
  while (!fresh.empty() && static_cast<int>(out.basis.size()) < max_dim) {
    std::vector<int> next;
    const int upto = static_cast<int>(out.basis.size());
    for (int i : fresh) {
      for (int j = 0; j < upto; ++j) {
        if (j == i) continue;
        if (static_cast<int>(out.basis.size()) >= max_dim) break;
        if (try_add(bracket(out.basis[i], out.basis[j])))
          next.push_back(static_cast<int>(out.basis.size()) - 1);
      }
    }
    fresh = std::move(next);
  }

  out.dim = static_cast<int>(out.basis.size());
  out.structure_.resize(static_cast<std::size_t>(out.dim) * out.dim);
  for (int i = 0; i < out.dim; ++i) {
    for (int j = 0; j < out.dim; ++j) {
      out.structure_[i * out.dim + j] = coords_of(out.basis, bracket(out.basis[i], out.basis[j]));
    }
  }
  return out;
}

bool is_commuting(const MatrixFamily& family) {
  const double s = family.scale();
  const double threshold = family.tol * std::max(1.0, s * s);
  for (int i = 0; i < family.mode_count(); ++i) {
    for (int j = i + 1; j < family.mode_count(); ++j) {
      if (bracket(family.modes[i], family.modes[j]).norm() > threshold) return false;
    }
  }
  return true;
}

std::optional<int> nilpotency_order(const LieAlgebraBasis& algebra) {
  const int d = algebra.dim;
  Eigen::MatrixXd g_k = Eigen::MatrixXd::Identity(d, d);
  for (int k = 1; k <= d + 1; ++k) {
    Eigen::MatrixXd products(d, d * g_k.cols());
    int col = 0;
    for (int i = 0; i < d; ++i) {
      for (int c = 0; c < g_k.cols(); ++c) {
        products.col(col++) = algebra.bracket_coords(Eigen::VectorXd::Unit(d, i), g_k.col(c));
      }
    }
    const Eigen::MatrixXd next = column_span(products.leftCols(col), algebra.tol);
    if (next.cols() == 0) return k;
    if (next.cols() >= g_k.cols()) return std::nullopt;  // stabilized nonzero
    g_k = next;
  }
  return std::nullopt;
}

bool is_solvable(const LieAlgebraBasis& algebra) {
  const int d = algebra.dim;
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(d, d);
  while (true) {
    const int hc = static_cast<int>(h.cols());
    Eigen::MatrixXd products(d, hc * hc);
    int col = 0;
    for (int a = 0; a < hc; ++a) {
      for (int b = a + 1; b < hc; ++b) {
        products.col(col++) = algebra.bracket_coords(h.col(a), h.col(b));
      }
    }
    const Eigen::MatrixXd next = column_span(products.leftCols(col), algebra.tol);
    if (next.cols() == 0) return true;
    if (next.cols() >= hc) return false;
    h = next;
  }
}

namespace {

// Killing form K(a,b) = tr(ad_a ad_b) from a structure-constant table.
Eigen::MatrixXd killing_matrix(const std::vector<Eigen::MatrixXd>& ad) {
  const int d = static_cast<int>(ad.size());
  Eigen::MatrixXd k(d, d);
  for (int a = 0; a < d; ++a) {
    for (int b = a; b < d; ++b) {
      k(a, b) = k(b, a) = (ad[a] * ad[b]).trace();
    }
  }
  return k;
}

std::vector<Eigen::MatrixXd> adjoint_maps(const LieAlgebraBasis& algebra) {
  std::vector<Eigen::MatrixXd> ad(algebra.dim, Eigen::MatrixXd(algebra.dim, algebra.dim));
  for (int a = 0; a < algebra.dim; ++a) {
    for (int j = 0; j < algebra.dim; ++j) ad[a].col(j) = algebra.structure(a, j);
  }
  return ad;
}

}  // namespace

AlgebraClassification classify(const MatrixFamily& family) {
  const LieAlgebraBasis algebra = generate_algebra(family);
  AlgebraClassification out;
  out.algebra_dim = algebra.dim;
  out.commuting = is_commuting(family);
  out.nilpotency_order = nilpotency_order(algebra);
  out.solvable = is_solvable(algebra);

  const int d = algebra.dim;
  if (out.solvable) {
    out.solvable_plus_compact = true;
    out.radical_basis = algebra.basis;
    return out;
  }

  const auto ad = adjoint_maps(algebra);
  const Eigen::MatrixXd killing = killing_matrix(ad);

  // Derived algebra span, then the radical as its Killing-orthogonal
  // complement (Cartan).
  Eigen::MatrixXd all_brackets(d, d * d);
  int col = 0;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) all_brackets.col(col++) = algebra.structure(i, j);
  }
  const Eigen::MatrixXd derived = column_span(all_brackets.leftCols(col), algebra.tol);

  const Eigen::MatrixXd constraint = derived.transpose() * killing;  // x in radical iff constraint*x = 0
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(constraint, Eigen::ComputeFullV);
  const double cutoff =
      algebra.tol * std::max(1.0, svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0);
  int rank = 0;
  while (rank < svd.singularValues().size() && svd.singularValues()(rank) > cutoff) ++rank;
  const Eigen::MatrixXd radical = svd.matrixV().rightCols(d - rank);
  const Eigen::MatrixXd complement = svd.matrixV().leftCols(rank);

  out.radical_basis.reserve(radical.cols());
  for (int c = 0; c < radical.cols(); ++c) out.radical_basis.push_back(algebra.realize(radical.col(c)));

  const int q = static_cast<int>(complement.cols());
  if (q == 0) {
    out.solvable_plus_compact = true;  // radical is all of g
    return out;
  }

  // Killing form of the quotient algebra g/r, represented on the complement.
  std::vector<Eigen::MatrixXd> ad_q(q, Eigen::MatrixXd(q, q));
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      ad_q[a].col(b) =
          complement.transpose() * algebra.bracket_coords(complement.col(a), complement.col(b));
    }
  }
  const Eigen::MatrixXd killing_q = killing_matrix(ad_q);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (killing_q + killing_q.transpose()));
  out.killing_spectrum.assign(es.eigenvalues().data(), es.eigenvalues().data() + q);

  const double k_scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  out.solvable_plus_compact = true;
  for (double lambda : out.killing_spectrum) {
    if (lambda >= -algebra.tol * k_scale) out.solvable_plus_compact = false;
  }
  return out;
}

}  // namespace switchcert
