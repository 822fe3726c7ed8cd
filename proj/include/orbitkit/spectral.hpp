// Copyright 2026 The orbitkit Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ORBITKIT_SPECTRAL_HPP_
#define ORBITKIT_SPECTRAL_HPP_

#include <vector>

#include "orbitkit/config.hpp"
#include "orbitkit/linalg.hpp"

namespace orbitkit {

// rho = sum_j lambda_j E_j over the distinct nonzero eigenvalues, listed in
// descending order, with the kernel E_0 = I - sum_j E_j at lambda_0 = 0.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;      // lambda_1 .. lambda_n
  std::vector<int> multiplicities;      // N_1 .. N_n
  std::vector<OrthProjection> projections;  // E_1 .. E_n
  OrthProjection kernel = OrthProjection::zero(1);  // E_0
  int total_rank = 0;                   // N

  int blocks() const { return static_cast<int>(eigenvalues.size()); }
  int dim() const { return kernel.dim(); }
  // Interpolation node for index j in 0..n (node 0 is the kernel).
  double node(int j) const { return j == 0 ? 0.0 : eigenvalues[j - 1]; }
  const OrthProjection& projection(int j) const { return j == 0 ? kernel : projections[j - 1]; }
  // sum_j E_j.
  OrthProjection support() const;
};

// Eigenvalues with |lambda| <= cluster_tol fold into the kernel; the rest
// are grouped by single linkage with gap cluster_tol and replaced by the
// cluster mean. Raises kClusterAmbiguity when two clusters (or a cluster
// and zero) end within 10 cluster_tol of each other.
SpectralDecomposition decompose(const HermitianOperator& rho, double cluster_tol,
                                const Tolerances& tol = {});
inline SpectralDecomposition decompose(const HermitianOperator& rho, const Tolerances& tol = {}) {
  return decompose(rho, tol.cluster_tol, tol);
}

// p_j(rho) with p_j(z) = prod_{k != j} (z - lambda_k) / (lambda_j - lambda_k),
// evaluated in product form over the nodes {0, lambda_1, .., lambda_n}.
// The result is validated as a projection at tol.lagrange_tol.
OrthProjection lagrange_projector(const HermitianOperator& rho, const SpectralDecomposition& decomp,
                                  int j, const Tolerances& tol = {});

// The unvalidated matrix p_j(rho); lagrange_projector wraps this.
CMatrix lagrange_polynomial(const CMatrix& rho, const SpectralDecomposition& decomp, int j);

HermitianOperator reconstruct(const SpectralDecomposition& decomp, const Tolerances& tol = {});

}  // namespace orbitkit

#endif  // ORBITKIT_SPECTRAL_HPP_
