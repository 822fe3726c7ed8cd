// Copyright 2026 The orbitkit Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ORBITKIT_LINALG_HPP_
#define ORBITKIT_LINALG_HPP_

#include <complex>

#include <Eigen/Dense>

#include "orbitkit/config.hpp"

namespace orbitkit {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Dense Hermitian operator on C^d. The stored matrix is the Hermitian part
// (A + A*)/2 of the input; the defect of the input is kept for reporting.
class HermitianOperator {
 public:
  // Throws kInvalidArgument for non-square or non-finite input and for a
  // Hermiticity defect above tol.sym_tol.
  explicit HermitianOperator(const CMatrix& m, const Tolerances& tol = {});

  const CMatrix& matrix() const { return matrix_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }
  double hermiticity_defect() const { return defect_; }

 private:
  CMatrix matrix_;
  double defect_ = 0.0;
};

// Orthogonal projection together with an orthonormal basis of its range.
class OrthProjection {
 public:
  // Validates ||P^2 - P||, ||P - P*|| <= tolerance and an integral trace.
  static OrthProjection from_matrix(const CMatrix& m, double tolerance);
  static OrthProjection from_matrix(const CMatrix& m, const Tolerances& tol = {}) {
    return from_matrix(m, tol.proj_tol);
  }
  // Columns must be orthonormal to within tol.ortho_tol.
  static OrthProjection from_basis(const CMatrix& columns, const Tolerances& tol = {});
  static OrthProjection zero(int dim);
  static OrthProjection identity(int dim);

  const CMatrix& matrix() const { return matrix_; }
  const CMatrix& basis() const { return basis_; }
  int rank() const { return static_cast<int>(basis_.cols()); }
  int dim() const { return static_cast<int>(matrix_.rows()); }

  // I - P.
  OrthProjection orthogonal_complement() const;

 private:
  OrthProjection(CMatrix matrix, CMatrix basis)
      : matrix_(std::move(matrix)), basis_(std::move(basis)) {}

  CMatrix matrix_;
  CMatrix basis_;
};

// Eigenvalues in descending order; vectors(:, k) belongs to values(k).
struct Eigensystem {
  RVector values;
  CMatrix vectors;

  int size() const { return static_cast<int>(values.size()); }
};

// Cyclic Jacobi. Ties in the eigenvalue are ordered lexicographically by the
// phase-normalized eigenvector (see normalize_phase).
Eigensystem eigh(const HermitianOperator& a, const Tolerances& tol = {});

// Same, for a matrix the caller already knows to be Hermitian (only the
// upper triangle and the real diagonal are trusted).
Eigensystem eigh_unchecked(const CMatrix& a, int max_sweeps = Tolerances{}.max_sweeps);

// Rotates x so its first component with modulus above 1e-10 is real and
// positive. Zero vectors are left alone.
void normalize_phase(Eigen::Ref<CVector> x);

// True if a precedes b in (real, imag) component-wise lexicographic order.
bool lexicographic_less(const CVector& a, const CVector& b);

struct SchattenNorms {
  double trace = 0.0;  // sum |lambda_k|
  double hs = 0.0;     // sqrt(sum lambda_k^2)
  double op = 0.0;     // max |lambda_k|
};

SchattenNorms schatten_norms(const HermitianOperator& a, const Tolerances& tol = {});

// sum |lambda_k| |x_k><x_k|.
HermitianOperator op_abs(const HermitianOperator& a, const Tolerances& tol = {});

// Largest singular value of an arbitrary square matrix, through the
// eigenvalues of M*M.
double op_norm(const CMatrix& m, int max_sweeps = Tolerances{}.max_sweeps);

// Trace norm of the Hermitian part of m.
double hermitian_trace_norm(const CMatrix& m, int max_sweeps = Tolerances{}.max_sweeps);

// Principal-angle data for orthonormal U (d x r) against the range of the
// orthonormal W (d x s). With B := (I - WW*)U = U_s Sigma V*:
//   sines    ascending singular values of B (sines of principal angles),
//   right    matching right singular vectors (columns, r x r),
//   left     matching left singular vectors (columns, d x r).
// The columns of U * right are eigenvectors of E F E on range(U) ordered by descending
// eigenvalue 1 - sines^2.
struct PrincipalSines {
  RVector sines;
  CMatrix right;
  CMatrix left;
};

PrincipalSines principal_sines(const CMatrix& u, const CMatrix& w);

// Number of sines at or below tol.meet_tol (a shared direction). Sines in
// the band (meet_tol, 10 meet_tol) raise kToleranceAmbiguity.
int shared_directions(const RVector& sines, const Tolerances& tol);

// Columns of `vectors` made orthonormal and orthogonal to the orthonormal
// columns of `basis`, by two passes of modified Gram-Schmidt. Left sine
// vectors for small sines are only accurate to eps / sine; this restores
// exact orthogonality when only their span matters.
CMatrix orthonormalize_against(const CMatrix& vectors, const CMatrix& basis);

// Projection onto range(E) intersect range(F). A direction of E is shared
// when its distance to range(F) is at most tol.meet_tol; distances in
// (meet_tol, 10 meet_tol) raise kToleranceAmbiguity.
OrthProjection meet(const OrthProjection& e, const OrthProjection& f,
                    const Tolerances& tol = {});

// Projection onto range(E) + range(F), rank = rank E + rank F - rank meet.
OrthProjection join(const OrthProjection& e, const OrthProjection& f,
                    const Tolerances& tol = {});

// Projection onto range(outer) minus range(inner), for inner <= outer.
OrthProjection difference(const OrthProjection& outer, const OrthProjection& inner,
                          const Tolerances& tol = {});

// Tr(PR) from the bases: ||U_P* U_R||_F^2.
double trace_product(const OrthProjection& p, const OrthProjection& r);

}  // namespace orbitkit

#endif  // ORBITKIT_LINALG_HPP_
