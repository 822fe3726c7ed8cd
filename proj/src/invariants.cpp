// Copyright 2026 The orbitkit Authors.
// SPDX-License-Identifier: Apache-2.0

#include "orbitkit/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "orbitkit/error.hpp"
#include "orbitkit/spectral.hpp"

namespace orbitkit {

double MomentSignature::measure_moment(int n) const {
  double sum = 0.0;
  for (const Atom& atom : atoms) sum += atom.weight * std::pow(atom.location, n);
  return sum;
}

double MomentSignature::duality_defect() const {
  double worst = 0.0;
  for (int n = 0; n <= order; ++n) {
    const double a = moments[static_cast<std::size_t>(n)];
    worst = std::max(worst, std::abs(a - measure_moment(n)) / (1.0 + std::abs(a)));
  }
  return worst;
}

MomentSignature moment_signature(const HermitianOperator& rho, int order, const Tolerances& tol) {
  const SpectralDecomposition decomp = decompose(rho, tol);
  if (order < 0 || order < 2 * decomp.blocks() - 1)
    throw Error(ErrorCode::kInvalidArgument,
                "moment order " + std::to_string(order) + " cannot pin " +
                    std::to_string(decomp.blocks()) + " atoms");
  MomentSignature sig;
  sig.order = order;
  for (int j = 0; j < decomp.blocks(); ++j) {
    const double lambda = decomp.eigenvalues[j];
    const int m = decomp.multiplicities[j];
    sig.atoms.push_back({lambda, lambda * lambda * m, m});
  }
  CMatrix power = rho.matrix() * rho.matrix();
  for (int n = 0; n <= order; ++n) {
    if (n > 0) power = power * rho.matrix();
    sig.moments.push_back(power.trace().real());
  }
  return sig;
}

int default_moment_order(const HermitianOperator& rho, const Tolerances& tol) {
  return 2 * decompose(rho, tol).blocks() + 2;
}

SameOrbitResult same_orbit(const HermitianOperator& rho, const HermitianOperator& nu, int order,
                           double tol_rel, const Tolerances& tol) {
  if (rho.dim() != nu.dim()) throw Error(ErrorCode::kInvalidArgument, "operators differ in dimension");
  const SpectralDecomposition a = decompose(rho, tol);
  const SpectralDecomposition b = decompose(nu, tol);
  if (a.total_rank == 0 || b.total_rank == 0)
    throw Error(ErrorCode::kInvalidArgument, "same_orbit needs nonzero operators");

  const MomentSignature ma = moment_signature(rho, order, tol);
  const MomentSignature mb = moment_signature(nu, order, tol);
  SameOrbitResult out;
  out.moments_agree = true;
  for (int n = 0; n <= order; ++n) {
    const double x = ma.moments[static_cast<std::size_t>(n)];
    const double y = mb.moments[static_cast<std::size_t>(n)];
    if (std::abs(x - y) > tol_rel * (1.0 + std::abs(x))) out.moments_agree = false;
  }

  out.spectra_agree = a.blocks() == b.blocks();
  for (int j = 0; out.spectra_agree && j < a.blocks(); ++j) {
    out.spectra_agree = a.multiplicities[j] == b.multiplicities[j] &&
                        std::abs(a.eigenvalues[j] - b.eigenvalues[j]) <= tol.cluster_tol;
  }
  out.same = out.moments_agree && out.spectra_agree;
  out.anomaly = out.moments_agree != out.spectra_agree;
  return out;
}

NormChain norm_chain(const HermitianOperator& a, const HermitianOperator& b, int rank_cap,
                     const Tolerances& tol) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::kInvalidArgument, "operators differ in dimension");
  if (rank_cap < 1) throw Error(ErrorCode::kInvalidArgument, "rank cap must be positive");
  const int rank_a = decompose(a, tol).total_rank;
  const int rank_b = decompose(b, tol).total_rank;
  if (rank_a > rank_cap || rank_b > rank_cap)
    throw Error(ErrorCode::kRankExceeded, "ranks " + std::to_string(rank_a) + ", " +
                                              std::to_string(rank_b) + " exceed cap " +
                                              std::to_string(rank_cap));
  const SchattenNorms norms = schatten_norms(HermitianOperator(a.matrix() - b.matrix(), tol), tol);
  NormChain out{norms.trace, norms.hs, norms.op, false};
  const double two_n = 2.0 * rank_cap;
  const double slack = 1e-12 * (1.0 + out.n1);
  out.chain_ok = out.n2 <= out.n1 + slack && out.n1 <= two_n * out.ninf + slack &&
                 two_n * out.ninf <= two_n * out.n2 + slack;
  return out;
}

ProjectiveDistances projective_distances(const OrthProjection& p, const OrthProjection& r,
                                         const Tolerances& tol) {
  if (p.dim() != r.dim()) throw Error(ErrorCode::kInvalidArgument, "projections differ in dimension");
  if (p.rank() != 1 || r.rank() != 1)
    throw Error(ErrorCode::kRankMismatch, "projective distances need rank-one projections");
  const CVector x = p.basis().col(0);
  const CVector y = r.basis().col(0);
  const Complex overlap = x.dot(y);
  // arccos sqrt(Tr(PR)) is the angle t between the lines. With x rotated to
  // make <x|y> real positive, ||x - y|| = 2 sin(t / 2) stays accurate for
  // nearby lines and is exactly zero for identical ones.
  const double mag = std::abs(overlap);
  double angle = std::numbers::pi / 2.0;
  if (mag > 0.0) {
    const double chord = ((overlap / mag) * x - y).norm();
    angle = 2.0 * std::asin(std::min(1.0, chord / 2.0));
  }
  ProjectiveDistances out;
  out.geodesic = std::sqrt(2.0) * angle;
  out.trace_dist = schatten_norms(HermitianOperator(p.matrix() - r.matrix(), tol), tol).trace;
  // 2 sqrt(1 - cos^2 t) = 2 |sin t|.
  out.relation_defect = std::abs(out.trace_dist - 2.0 * std::abs(std::sin(out.geodesic / std::sqrt(2.0))));
  return out;
}

ExamplePair example_pair_generator(int dim, const std::vector<Complex>& alpha,
                                   const Tolerances& tol) {
  const int n = static_cast<int>(alpha.size());
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "alpha must be nonempty");
  if (dim < 2 * n)
    throw Error(ErrorCode::kDimensionTooSmall,
                "dimension " + std::to_string(dim) + " < 2 * " + std::to_string(n));
  CMatrix e_basis = CMatrix::Zero(dim, n);
  CMatrix f_basis = CMatrix::Zero(dim, n);
  ExamplePrediction expected;
  double overlap_sum = 0.0;
  for (int j = 0; j < n; ++j) {
    const double mag = std::abs(alpha[j]);
    if (!(mag > 0.0 && mag < 1.0))
      throw Error(ErrorCode::kInvalidArgument, "each |alpha_j| must lie in (0, 1)");
    const double beta = std::sqrt(1.0 - mag * mag);
    e_basis(j, j) = 1.0;
    f_basis(j, j) = alpha[j];
    f_basis(n + j, j) = beta;
    expected.efe_spectrum.push_back(mag * mag);
    overlap_sum += mag * mag;
    expected.op_norm = std::max(expected.op_norm, beta);
  }
  std::sort(expected.efe_spectrum.begin(), expected.efe_spectrum.end(), std::greater<>());
  expected.hs_sq = 2.0 * (n - overlap_sum);
  return {OrthProjection::from_basis(e_basis, tol), OrthProjection::from_basis(f_basis, tol),
          std::move(expected)};
}

}  // namespace orbitkit
