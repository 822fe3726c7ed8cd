// Copyright 2026 The orbitkit Authors.
// SPDX-License-Identifier: Apache-2.0

#include "orbitkit/spectral.hpp"

#include <cmath>
#include <string>

#include "orbitkit/error.hpp"

namespace orbitkit {

OrthProjection SpectralDecomposition::support() const {
  const int d = dim();
  CMatrix basis(d, total_rank);
  Eigen::Index col = 0;
  for (const OrthProjection& p : projections) {
    basis.middleCols(col, p.rank()) = p.basis();
    col += p.rank();
  }
  return OrthProjection::from_basis(basis);
}

SpectralDecomposition decompose(const HermitianOperator& rho, double cluster_tol,
                                const Tolerances& tol) {
  if (!(cluster_tol > 0.0)) throw Error(ErrorCode::kInvalidArgument, "cluster_tol must be positive");
  const Eigensystem es = eigh(rho, tol);
  const int d = es.size();

  std::vector<int> kernel_cols;
  std::vector<std::vector<int>> clusters;  // column indices, descending eigenvalue
  for (int k = 0; k < d; ++k) {
    const double lambda = es.values(k);
    if (std::abs(lambda) <= cluster_tol) {
      kernel_cols.push_back(k);
      continue;
    }
    if (std::abs(lambda) <= 10.0 * cluster_tol)
      throw Error(ErrorCode::kClusterAmbiguity,
                  "eigenvalue " + std::to_string(lambda) + " is too close to zero for cluster_tol");
    if (!clusters.empty()) {
      const double gap = es.values(clusters.back().back()) - lambda;
      if (gap <= cluster_tol) {
        clusters.back().push_back(k);
        continue;
      }
      if (gap <= 10.0 * cluster_tol)
        throw Error(ErrorCode::kClusterAmbiguity,
                    "eigenvalue clusters separated by " + std::to_string(gap) +
                        ", within 10 cluster_tol; raise cluster_tol explicitly");
    }
    clusters.push_back({k});
  }

  SpectralDecomposition out;
  for (const std::vector<int>& cluster : clusters) {
    CMatrix basis(d, static_cast<Eigen::Index>(cluster.size()));
    double sum = 0.0;
    for (std::size_t i = 0; i < cluster.size(); ++i) {
      basis.col(static_cast<Eigen::Index>(i)) = es.vectors.col(cluster[i]);
      sum += es.values(cluster[i]);
    }
    out.eigenvalues.push_back(sum / static_cast<double>(cluster.size()));
    out.multiplicities.push_back(static_cast<int>(cluster.size()));
    out.projections.push_back(OrthProjection::from_basis(basis, tol));
    out.total_rank += static_cast<int>(cluster.size());
  }
  if (kernel_cols.empty()) {
    out.kernel = OrthProjection::zero(d);
  } else {
    CMatrix basis(d, static_cast<Eigen::Index>(kernel_cols.size()));
    for (std::size_t i = 0; i < kernel_cols.size(); ++i)
      basis.col(static_cast<Eigen::Index>(i)) = es.vectors.col(kernel_cols[i]);
    out.kernel = OrthProjection::from_basis(basis, tol);
  }
  return out;
}

CMatrix lagrange_polynomial(const CMatrix& rho, const SpectralDecomposition& decomp, int j) {
  const int n = decomp.blocks();
  if (j < 0 || j > n) throw Error(ErrorCode::kInvalidArgument, "spectral index out of range");
  const Eigen::Index d = rho.rows();
  const CMatrix identity = CMatrix::Identity(d, d);
  const double lambda_j = decomp.node(j);
  CMatrix result = identity;
  for (int k = 0; k <= n; ++k) {
    if (k == j) continue;
    const double lambda_k = decomp.node(k);
    result = result * (rho - lambda_k * identity) / (lambda_j - lambda_k);
  }
  return result;
}

OrthProjection lagrange_projector(const HermitianOperator& rho, const SpectralDecomposition& decomp,
                                  int j, const Tolerances& tol) {
  const int n = decomp.blocks();
  if (j < 0 || j > n) throw Error(ErrorCode::kInvalidArgument, "spectral index out of range");
  if (rho.dim() != decomp.dim())
    throw Error(ErrorCode::kInvalidArgument, "operator and decomposition differ in dimension");

  double lo = 0.0;
  double hi = 0.0;
  for (int k = 1; k <= n; ++k) {
    lo = std::min(lo, decomp.node(k));
    hi = std::max(hi, decomp.node(k));
  }
  double denominator = 1.0;
  for (int k = 0; k <= n; ++k)
    if (k != j) denominator *= std::abs(decomp.node(j) - decomp.node(k));
  if (denominator < 1e-12 * std::pow(hi - lo, n))
    throw Error(ErrorCode::kConditioningOverflow,
                "interpolation nodes too close for a stable Lagrange projector");

  return OrthProjection::from_matrix(lagrange_polynomial(rho.matrix(), decomp, j), tol.lagrange_tol);
}

HermitianOperator reconstruct(const SpectralDecomposition& decomp, const Tolerances& tol) {
  const int d = decomp.dim();
  CMatrix sum = CMatrix::Zero(d, d);
  for (int j = 1; j <= decomp.blocks(); ++j) sum += decomp.node(j) * decomp.projection(j).matrix();
  return HermitianOperator(sum, tol);
}

}  // namespace orbitkit
