// Copyright 2026 The orbitkit Authors.
// SPDX-License-Identifier: Apache-2.0

#include "orbitkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "orbitkit/error.hpp"

namespace orbitkit {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_square_finite(const CMatrix& m, const char* what) {
  if (m.rows() < 1 || m.rows() != m.cols())
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + ": matrix must be square, dim >= 1");
  if (!m.allFinite())
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + ": non-finite entry");
}

double max_abs_entry(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// Applies G = [[g_pp, g_pq], [g_qp, g_qq]] on columns p, q of m (m <- m G).
void rotate_columns(CMatrix& m, Eigen::Index p, Eigen::Index q, Complex g_pp, Complex g_pq,
                    Complex g_qp, Complex g_qq) {
  for (Eigen::Index k = 0; k < m.rows(); ++k) {
    const Complex mkp = m(k, p);
    const Complex mkq = m(k, q);
    m(k, p) = mkp * g_pp + mkq * g_qp;
    m(k, q) = mkp * g_pq + mkq * g_qq;
  }
}

// m <- G* m on rows p, q.
void rotate_rows(CMatrix& m, Eigen::Index p, Eigen::Index q, Complex g_pp, Complex g_pq,
                 Complex g_qp, Complex g_qq) {
  for (Eigen::Index k = 0; k < m.cols(); ++k) {
    const Complex mpk = m(p, k);
    const Complex mqk = m(q, k);
    m(p, k) = std::conj(g_pp) * mpk + std::conj(g_qp) * mqk;
    m(q, k) = std::conj(g_pq) * mpk + std::conj(g_qq) * mqk;
  }
}

double off_diagonal_norm(const CMatrix& a) {
  double sum = 0.0;
  for (Eigen::Index q = 1; q < a.cols(); ++q)
    for (Eigen::Index p = 0; p < q; ++p) sum += std::norm(a(p, q));
  return std::sqrt(2.0 * sum);
}

CMatrix hermitian_part(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

HermitianOperator::HermitianOperator(const CMatrix& m, const Tolerances& tol) {
  require_square_finite(m, "HermitianOperator");
  defect_ = max_abs_entry(m - m.adjoint());
  if (defect_ > tol.sym_tol)
    throw Error(ErrorCode::kInvalidArgument,
                "Hermiticity defect " + std::to_string(defect_) + " exceeds sym_tol");
  matrix_ = hermitian_part(m);
}

OrthProjection OrthProjection::from_matrix(const CMatrix& m, double tolerance) {
  require_square_finite(m, "OrthProjection");
  const int d = static_cast<int>(m.rows());
  // i(P - P*) is Hermitian, so its operator norm equals that of P - P*.
  const CMatrix skew = Complex(0.0, 1.0) * (m - m.adjoint());
  if (op_norm(skew) > tolerance)
    throw Error(ErrorCode::kInvalidArgument, "projection is not self-adjoint");
  const CMatrix p = hermitian_part(m);
  if (op_norm(p * p - p) > tolerance)
    throw Error(ErrorCode::kInvalidArgument, "projection is not idempotent");

  const double trace = p.trace().real();
  const int rank = static_cast<int>(std::lround(trace));
  if (std::abs(trace - rank) > tolerance * d)
    throw Error(ErrorCode::kInvalidArgument, "projection trace is not integral");

  const Eigensystem es = eigh_unchecked(p);
  int count = 0;
  while (count < es.size() && es.values(count) > 0.5) ++count;
  if (count != rank)
    throw Error(ErrorCode::kInvalidArgument, "projection rank disagrees with its trace");
  CMatrix basis = es.vectors.leftCols(count);
  CMatrix exact = basis * basis.adjoint();
  return OrthProjection(std::move(exact), std::move(basis));
}

OrthProjection OrthProjection::from_basis(const CMatrix& columns, const Tolerances& tol) {
  if (columns.rows() < 1) throw Error(ErrorCode::kInvalidArgument, "basis has no rows");
  if (!columns.allFinite()) throw Error(ErrorCode::kInvalidArgument, "basis has non-finite entries");
  if (columns.cols() > columns.rows())
    throw Error(ErrorCode::kInvalidArgument, "more basis vectors than the dimension");
  const CMatrix gram = columns.adjoint() * columns;
  const double defect =
      max_abs_entry(gram - CMatrix::Identity(columns.cols(), columns.cols()));
  if (defect > tol.ortho_tol)
    throw Error(ErrorCode::kToleranceAmbiguity,
                "basis is not orthonormal (defect " + std::to_string(defect) + ")");
  CMatrix matrix = columns * columns.adjoint();
  return OrthProjection(std::move(matrix), columns);
}

OrthProjection OrthProjection::zero(int dim) {
  return OrthProjection(CMatrix::Zero(dim, dim), CMatrix(dim, 0));
}

OrthProjection OrthProjection::identity(int dim) {
  return OrthProjection(CMatrix::Identity(dim, dim), CMatrix::Identity(dim, dim));
}

OrthProjection OrthProjection::orthogonal_complement() const {
  const int d = dim();
  if (rank() == 0) return identity(d);
  if (rank() == d) return zero(d);
  // Eigenvectors of P with eigenvalue 0 span the complement.
  const Eigensystem es = eigh_unchecked(matrix_);
  CMatrix basis = es.vectors.rightCols(d - rank());
  CMatrix matrix = basis * basis.adjoint();
  return OrthProjection(std::move(matrix), std::move(basis));
}

Eigensystem eigh_unchecked(const CMatrix& input, int max_sweeps) {
  const Eigen::Index n = input.rows();
  CMatrix a = input;
  for (Eigen::Index k = 0; k < n; ++k) a(k, k) = a(k, k).real();
  CMatrix v = CMatrix::Identity(n, n);
  const double frob = a.norm();

  for (int sweep = 0;; ++sweep) {
    if (off_diagonal_norm(a) <= kEps * frob) break;
    if (sweep == max_sweeps)
      throw Error(ErrorCode::kNonConvergence,
                  "Jacobi did not converge in " + std::to_string(max_sweeps) + " sweeps");
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = std::abs(a(p, q));
        if (apq == 0.0) continue;
        // Phase rotation makes a_pq real, then a real rotation annihilates it.
        const Complex w = a(p, q) / apq;
        const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex g_pp = c;
        const Complex g_pq = s;
        const Complex g_qp = -s * std::conj(w);
        const Complex g_qq = c * std::conj(w);
        rotate_columns(a, p, q, g_pp, g_pq, g_qp, g_qq);
        rotate_rows(a, p, q, g_pp, g_pq, g_qp, g_qq);
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        rotate_columns(v, p, q, g_pp, g_pq, g_qp, g_qq);
      }
    }
  }

  for (Eigen::Index k = 0; k < n; ++k) normalize_phase(v.col(k));
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    const double li = a(i, i).real();
    const double lj = a(j, j).real();
    if (li != lj) return li > lj;
    return lexicographic_less(v.col(i), v.col(j));
  });

  Eigensystem es;
  es.values.resize(n);
  es.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    es.values(k) = a(order[k], order[k]).real();
    es.vectors.col(k) = v.col(order[k]);
  }
  return es;
}

Eigensystem eigh(const HermitianOperator& a, const Tolerances& tol) {
  return eigh_unchecked(a.matrix(), tol.max_sweeps);
}

void normalize_phase(Eigen::Ref<CVector> x) {
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    const double r = std::abs(x(k));
    if (r > 1e-10) {
      x *= std::conj(x(k)) / r;
      x(k) = r;
      return;
    }
  }
}

bool lexicographic_less(const CVector& a, const CVector& b) {
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    if (a(k).real() != b(k).real()) return a(k).real() < b(k).real();
    if (a(k).imag() != b(k).imag()) return a(k).imag() < b(k).imag();
  }
  return false;
}

SchattenNorms schatten_norms(const HermitianOperator& a, const Tolerances& tol) {
  const Eigensystem es = eigh(a, tol);
  SchattenNorms norms;
  double squares = 0.0;
  for (int k = 0; k < es.size(); ++k) {
    const double mag = std::abs(es.values(k));
    norms.trace += mag;
    squares += mag * mag;
    norms.op = std::max(norms.op, mag);
  }
  norms.hs = std::sqrt(squares);
  return norms;
}

HermitianOperator op_abs(const HermitianOperator& a, const Tolerances& tol) {
  const Eigensystem es = eigh(a, tol);
  const CMatrix abs_values = es.values.cwiseAbs().cast<Complex>().asDiagonal();
  return HermitianOperator(es.vectors * abs_values * es.vectors.adjoint(), tol);
}

double op_norm(const CMatrix& m, int max_sweeps) {
  if (m.size() == 0) return 0.0;
  const Eigensystem es = eigh_unchecked(m.adjoint() * m, max_sweeps);
  return std::sqrt(std::max(0.0, es.values(0)));
}

double hermitian_trace_norm(const CMatrix& m, int max_sweeps) {
  const Eigensystem es = eigh_unchecked(hermitian_part(m), max_sweeps);
  return es.values.cwiseAbs().sum();
}

PrincipalSines principal_sines(const CMatrix& u, const CMatrix& w) {
  const Eigen::Index r = u.cols();
  PrincipalSines out;
  if (r == 0) {
    out.sines.resize(0);
    out.right.resize(0, 0);
    out.left.resize(u.rows(), 0);
    return out;
  }
  const CMatrix b = w.cols() == 0 ? u : CMatrix(u - w * (w.adjoint() * u));
  Eigen::JacobiSVD<CMatrix> svd(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
  // Eigen sorts singular values in decreasing order; we want ascending sines.
  out.sines = svd.singularValues().reverse();
  out.right = svd.matrixV().rowwise().reverse();
  out.left = svd.matrixU().rowwise().reverse();
  return out;
}

int shared_directions(const RVector& sines, const Tolerances& tol) {
  int shared = 0;
  for (Eigen::Index k = 0; k < sines.size(); ++k) {
    const double s = sines(k);
    if (s <= tol.meet_tol) {
      ++shared;
    } else if (s < 10.0 * tol.meet_tol) {
      throw Error(ErrorCode::kToleranceAmbiguity,
                  "principal angle sine " + std::to_string(s) + " is too close to meet_tol");
    }
  }
  return shared;
}

CMatrix orthonormalize_against(const CMatrix& vectors, const CMatrix& basis) {
  CMatrix out = vectors;
  for (Eigen::Index k = 0; k < out.cols(); ++k) {
    for (int pass = 0; pass < 2; ++pass) {
      if (basis.cols() > 0) out.col(k) -= basis * (basis.adjoint() * out.col(k));
      for (Eigen::Index i = 0; i < k; ++i) out.col(k) -= out.col(i) * out.col(i).dot(out.col(k));
    }
    const double norm = out.col(k).norm();
    if (!(norm > 0.5))
      throw Error(ErrorCode::kToleranceAmbiguity, "direction lies inside the given span");
    out.col(k) /= norm;
  }
  return out;
}

namespace {

void require_same_dim(const OrthProjection& e, const OrthProjection& f) {
  if (e.dim() != f.dim()) throw Error(ErrorCode::kInvalidArgument, "projections differ in dimension");
}

}  // namespace

OrthProjection meet(const OrthProjection& e, const OrthProjection& f, const Tolerances& tol) {
  require_same_dim(e, f);
  if (e.rank() == 0 || f.rank() == 0) return OrthProjection::zero(e.dim());
  const PrincipalSines ps = principal_sines(e.basis(), f.basis());
  const int shared = shared_directions(ps.sines, tol);
  if (shared == 0) return OrthProjection::zero(e.dim());
  const CMatrix basis = e.basis() * ps.right.leftCols(shared);
  OrthProjection q = OrthProjection::from_basis(basis, tol);
  const CMatrix& qm = q.matrix();
  if (op_norm(qm * e.matrix() - qm) > tol.proj_tol || op_norm(qm * f.matrix() - qm) > tol.proj_tol)
    throw Error(ErrorCode::kToleranceAmbiguity, "meet is not contained in both projections");
  return q;
}

OrthProjection join(const OrthProjection& e, const OrthProjection& f, const Tolerances& tol) {
  require_same_dim(e, f);
  if (f.rank() == 0) return e;
  if (e.rank() == 0) return f;
  // Directions of F outside E, normalized: left singular vectors of (I - E) U_F.
  const PrincipalSines ps = principal_sines(f.basis(), e.basis());
  const int shared = shared_directions(ps.sines, tol);
  const Eigen::Index extra = f.rank() - shared;
  CMatrix basis(e.dim(), e.rank() + extra);
  basis << e.basis(), orthonormalize_against(ps.left.rightCols(extra), e.basis());
  return OrthProjection::from_basis(basis, tol);
}

OrthProjection difference(const OrthProjection& outer, const OrthProjection& inner,
                          const Tolerances& tol) {
  require_same_dim(outer, inner);
  const int rank = outer.rank() - inner.rank();
  if (rank < 0) throw Error(ErrorCode::kRankMismatch, "inner projection has larger rank");
  if (rank == 0) return OrthProjection::zero(outer.dim());
  if (inner.rank() == 0) return outer;
  // (I - inner) U_outer has singular values ~1 on the difference and ~0 on inner.
  const PrincipalSines ps = principal_sines(outer.basis(), inner.basis());
  const Eigen::Index r = ps.sines.size();
  if (ps.sines(r - rank) < 0.5 || (r - rank > 0 && ps.sines(r - rank - 1) > 0.5))
    throw Error(ErrorCode::kToleranceAmbiguity, "inner projection is not contained in outer");
  return OrthProjection::from_basis(ps.left.rightCols(rank), tol);
}

double trace_product(const OrthProjection& p, const OrthProjection& r) {
  if (p.rank() == 0 || r.rank() == 0) return 0.0;
  return (p.basis().adjoint() * r.basis()).squaredNorm();
}

}  // namespace orbitkit
