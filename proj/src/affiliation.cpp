// Copyright 2026 The orbitkit Authors.
// SPDX-License-Identifier: Apache-2.0

#include "orbitkit/affiliation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "orbitkit/error.hpp"

namespace orbitkit {
namespace {

void require_equal_rank(const OrthProjection& e, const OrthProjection& f) {
  if (e.dim() != f.dim()) throw Error(ErrorCode::kInvalidArgument, "projections differ in dimension");
  if (e.rank() != f.rank())
    throw Error(ErrorCode::kRankMismatch, "ranks " + std::to_string(e.rank()) + " and " +
                                              std::to_string(f.rank()) + " differ");
}

// Unit factor z with z * x having its first significant component real positive.
Complex phase_of(const CVector& x) {
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    const double r = std::abs(x(k));
    if (r > 1e-10) return std::conj(x(k)) / r;
  }
  return 1.0;
}

// EFE eigenvalue gaps below this count as degenerate for ordering purposes.
constexpr double kDegenerateGap = 1e-9;

}  // namespace

ProjectionPairSplit split(const OrthProjection& e, const OrthProjection& f, const Tolerances& tol) {
  require_equal_rank(e, f);
  const int d = e.dim();
  ProjectionPairSplit out{OrthProjection::zero(d), OrthProjection::zero(d), OrthProjection::zero(d),
                          OrthProjection::zero(d), OrthProjection::zero(d), 0};
  if (e.rank() == 0) return out;

  const PrincipalSines from_e = principal_sines(e.basis(), f.basis());
  const PrincipalSines from_f = principal_sines(f.basis(), e.basis());
  const int shared = shared_directions(from_e.sines, tol);
  if (shared_directions(from_f.sines, tol) != shared)
    throw Error(ErrorCode::kToleranceAmbiguity, "meet rank differs when computed from either side");

  const int rest = e.rank() - shared;
  out.q = meet(e, f, tol);
  out.n_prime = rest;
  if (rest == 0) return out;

  out.e_prime = OrthProjection::from_basis(e.basis() * from_e.right.rightCols(rest), tol);
  out.f_prime = OrthProjection::from_basis(f.basis() * from_f.right.rightCols(rest), tol);
  // (E' join F') - E' is spanned by the normalized (I - E') F' directions.
  out.e_perp = OrthProjection::from_basis(
      orthonormalize_against(principal_sines(out.f_prime.basis(), out.e_prime.basis()).left,
                             out.e_prime.basis()),
      tol);
  out.f_perp = OrthProjection::from_basis(
      orthonormalize_against(principal_sines(out.e_prime.basis(), out.f_prime.basis()).left,
                             out.f_prime.basis()),
      tol);
  return out;
}

AffiliatedBases affiliate(const OrthProjection& e, const OrthProjection& f, const Tolerances& tol) {
  require_equal_rank(e, f);
  const int d = e.dim();
  const int n = e.rank();
  AffiliatedBases out;
  out.e.resize(d, n);
  out.f.resize(d, n);
  out.e_perp.resize(d, n);
  if (n == 0) return out;

  const CMatrix& ue = e.basis();
  const CMatrix& uf = f.basis();
  const PrincipalSines ps = principal_sines(ue, uf);
  if (shared_directions(ps.sines, tol) > 0)
    throw Error(ErrorCode::kToleranceAmbiguity, "projections share a direction; split the pair first");

  // Ascending sines = descending eigenvalues 1 - s^2 of EFE.
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::vector<CVector> e_cols(static_cast<std::size_t>(n));
  std::vector<CVector> sine_dirs(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    CVector ej = ue * ps.right.col(j);
    const Complex z = phase_of(ej);
    e_cols[j] = z * ej;
    sine_dirs[j] = z * ps.left.col(j);
  }
  auto efe_eigenvalue = [&](int j) { return 1.0 - ps.sines(j) * ps.sines(j); };
  for (int start = 0; start < n;) {
    int end = start + 1;
    while (end < n && efe_eigenvalue(end - 1) - efe_eigenvalue(end) < kDegenerateGap) ++end;
    std::sort(order.begin() + start, order.begin() + end,
              [&](int a, int b) { return lexicographic_less(e_cols[a], e_cols[b]); });
    start = end;
  }

  for (int slot = 0; slot < n; ++slot) {
    const int j = order[slot];
    const CVector& ej = e_cols[j];
    const CVector fe = uf * (uf.adjoint() * ej);
    const double c = fe.norm();
    if (c * c <= tol.ker_tol)
      throw Error(ErrorCode::kKernelHit, "EFE eigenvalue " + std::to_string(c * c) +
                                             " at or below ker_tol: a direction of E is orthogonal to F");
    const CVector fj = fe / c;
    // (I - E) f_j is parallel to -(I - E) u_j where (I - F) e_j = s_j u_j.
    const CVector g = sine_dirs[j] - ue * (ue.adjoint() * sine_dirs[j]);
    const CVector perp = -g / g.norm();

    out.e.col(slot) = ej;
    out.f.col(slot) = fj;
    out.e_perp.col(slot) = perp;
    out.alpha.push_back(ej.dot(fj));
    out.beta.push_back(perp.dot(fj));
    out.overlaps.push_back(fj.dot(ej).real());
  }
  return out;
}

AffiliatedBases complement_pair(const AffiliatedBases& bases) {
  const Eigen::Index d = bases.e.rows();
  const int n = bases.size();
  AffiliatedBases out;
  out.e = bases.e_perp;
  out.f.resize(d, n);
  out.e_perp.resize(d, n);
  for (int j = 0; j < n; ++j) {
    const Complex a = bases.alpha[j];
    const Complex b = bases.beta[j];
    CVector fj = -std::conj(b) * bases.e.col(j) + std::conj(a) * bases.e_perp.col(j);
    fj.normalize();
    const CVector ej = out.e.col(j);
    const Complex alpha = ej.dot(fj);
    const CVector rest = fj - alpha * ej;
    const CVector perp = rest / rest.norm();
    out.f.col(j) = fj;
    out.e_perp.col(j) = perp;
    out.alpha.push_back(alpha);
    out.beta.push_back(perp.dot(fj));
    out.overlaps.push_back(fj.dot(ej).real());
  }
  return out;
}

ProximityCheck proximity_check(const OrthProjection& e, const OrthProjection& f) {
  if (e.dim() != f.dim()) throw Error(ErrorCode::kInvalidArgument, "projections differ in dimension");
  ProximityCheck out;
  out.hs_sq = (e.matrix() - f.matrix()).squaredNorm();
  out.satisfied = out.hs_sq < 2.0;
  return out;
}

}  // namespace orbitkit
