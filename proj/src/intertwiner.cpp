// Copyright 2026 The orbitkit Authors.
// SPDX-License-Identifier: Apache-2.0

#include "orbitkit/intertwiner.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "orbitkit/affiliation.hpp"
#include "orbitkit/error.hpp"
#include "orbitkit/spectral.hpp"

namespace orbitkit {
namespace {

// dev += sum_j (f_j - e_j) e_j*, i.e. the map e_j -> f_j minus the identity.
void add_affiliated_map(CMatrix& dev, const AffiliatedBases& bases) {
  if (bases.size() == 0) return;
  dev += (bases.f - bases.e) * bases.e.adjoint();
}

void finalize(IntertwinerCertificate& cert, const CMatrix& dev, const CMatrix& from,
              const CMatrix& to, const OrthProjection& support_join, const Tolerances& tol) {
  const Eigen::Index d = dev.rows();
  const CMatrix identity = CMatrix::Identity(d, d);
  cert.v = identity + dev;
  cert.op_norm_dev = op_norm(dev, tol.max_sweeps);
  cert.hs_norm_dev = dev.norm();
  cert.unitarity_defect = op_norm(cert.v.adjoint() * cert.v - identity, tol.max_sweeps);
  cert.conjugation_residual =
      hermitian_trace_norm(cert.v * from * cert.v.adjoint() - to, tol.max_sweeps);
  cert.locality_defect = op_norm(dev * (identity - support_join.matrix()), tol.max_sweeps);
  cert.bound_ok = check_chain(cert).all();
}

void require_isospectral(const SpectralDecomposition& a, const SpectralDecomposition& b,
                         double cluster_tol) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::kNotIsospectral, "operators differ in dimension");
  if (a.blocks() != b.blocks())
    throw Error(ErrorCode::kNotIsospectral, std::to_string(a.blocks()) + " vs " +
                                                std::to_string(b.blocks()) + " distinct eigenvalues");
  for (int j = 0; j < a.blocks(); ++j) {
    if (a.multiplicities[j] != b.multiplicities[j])
      throw Error(ErrorCode::kNotIsospectral, "multiplicities differ in block " + std::to_string(j + 1));
    if (std::abs(a.eigenvalues[j] - b.eigenvalues[j]) > cluster_tol)
      throw Error(ErrorCode::kNotIsospectral, "eigenvalues differ in block " + std::to_string(j + 1));
  }
}

DeltaAudit audit(const SpectralDecomposition& a, const SpectralDecomposition& b) {
  DeltaAudit out;
  for (int j = 1; j <= a.blocks(); ++j)
    out.delta_j.push_back(a.multiplicities[j - 1] - trace_product(a.projection(j), b.projection(j)));
  out.delta = a.total_rank - trace_product(a.support(), b.support());
  return out;
}

}  // namespace

double IntertwinerCertificate::delta_sum() const {
  return std::accumulate(delta_j.begin(), delta_j.end(), 0.0);
}

ChainCheck check_chain(const IntertwinerCertificate& cert) {
  ChainCheck check;
  const double op_sq = cert.op_norm_dev * cert.op_norm_dev;
  const double hs_sq = cert.hs_norm_dev * cert.hs_norm_dev;
  check.op_le_hs = op_sq <= hs_sq + kChainSlack;
  check.hs_le_hs_bound = hs_sq <= cert.hs_bound() + kChainSlack;
  check.delta_le_sum = cert.delta <= cert.delta_sum() + 1e-10;
  check.below_epsilon = cert.op_norm_dev < cert.epsilon;
  return check;
}

IntertwinerCertificate projection_intertwiner(const OrthProjection& e, const OrthProjection& f,
                                              double epsilon, const Tolerances& tol) {
  if (e.dim() != f.dim()) throw Error(ErrorCode::kInvalidArgument, "projections differ in dimension");
  if (e.rank() != f.rank()) throw Error(ErrorCode::kRankMismatch, "projections differ in rank");
  if (!(epsilon > 0.0 && epsilon < 2.0))
    throw Error(ErrorCode::kHypothesisViolated, "epsilon must lie in (0, 2)");
  const double delta = e.rank() - trace_product(e, f);
  if (!(delta < epsilon * epsilon / 4.0))
    throw Error(ErrorCode::kHypothesisViolated,
                "N - Tr(EF) = " + std::to_string(delta) + " is not below eps^2/4");

  IntertwinerCertificate cert;
  cert.epsilon = epsilon;
  cert.delta_j = {delta};
  cert.delta = delta;

  const int d = e.dim();
  CMatrix dev = CMatrix::Zero(d, d);
  const ProjectionPairSplit parts = split(e, f, tol);
  if (parts.n_prime > 0) {
    const AffiliatedBases bases = affiliate(parts.e_prime, parts.f_prime, tol);
    add_affiliated_map(dev, bases);
    add_affiliated_map(dev, complement_pair(bases));
  }
  finalize(cert, dev, e.matrix(), f.matrix(), join(e, f, tol), tol);
  return cert;
}

DeltaAudit delta_audit(const HermitianOperator& rho, const HermitianOperator& rho_prime,
                       const Tolerances& tol) {
  const SpectralDecomposition a = decompose(rho, tol);
  const SpectralDecomposition b = decompose(rho_prime, tol);
  require_isospectral(a, b, tol.cluster_tol);
  return audit(a, b);
}

IntertwinerCertificate orbit_intertwiner(const HermitianOperator& rho,
                                         const HermitianOperator& rho_prime, double epsilon,
                                         const Tolerances& tol) {
  if (!(epsilon > 0.0 && epsilon * epsilon < 1.0))
    throw Error(ErrorCode::kHypothesisViolated, "epsilon^2 must lie in (0, 1)");
  const SpectralDecomposition a = decompose(rho, tol);
  const SpectralDecomposition b = decompose(rho_prime, tol);
  require_isospectral(a, b, tol.cluster_tol);

  IntertwinerCertificate cert;
  cert.epsilon = epsilon;
  DeltaAudit defects = audit(a, b);
  cert.delta_j = std::move(defects.delta_j);
  cert.delta = defects.delta;
  if (!(cert.delta_sum() < epsilon * epsilon / 4.0))
    throw Error(ErrorCode::kHypothesisViolated,
                "sum of block defects " + std::to_string(cert.delta_sum()) + " is not below eps^2/4");

  const int d = rho.dim();
  CMatrix dev = CMatrix::Zero(d, d);
  // Blocks: e^(j)_k -> f^(j)_k on E_j', identity on Q_j = E_j meet F_j.
  for (int j = 1; j <= a.blocks(); ++j) {
    const ProjectionPairSplit parts = split(a.projection(j), b.projection(j), tol);
    if (parts.n_prime > 0) add_affiliated_map(dev, affiliate(parts.e_prime, parts.f_prime, tol));
  }
  // Complement: (E join F - E) -> (E join F - F) through the affiliated pair.
  const OrthProjection e_all = a.support();
  const OrthProjection f_all = b.support();
  const ProjectionPairSplit total = split(e_all, f_all, tol);
  if (total.n_prime > 0)
    add_affiliated_map(dev, complement_pair(affiliate(total.e_prime, total.f_prime, tol)));

  finalize(cert, dev, rho.matrix(), rho_prime.matrix(), join(e_all, f_all, tol), tol);
  return cert;
}

}  // namespace orbitkit
