// Copyright 2026 The orbitkit Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ORBITKIT_INVARIANTS_HPP_
#define ORBITKIT_INVARIANTS_HPP_

#include <vector>

#include "orbitkit/config.hpp"
#include "orbitkit/linalg.hpp"

namespace orbitkit {

// One atom of mu_rho = sum_j lambda_j^2 m_j delta_{lambda_j}.
struct Atom {
  double location = 0.0;  // lambda_j
  double weight = 0.0;    // lambda_j^2 m_j
  int multiplicity = 0;
};

// a_n = Tr(rho^{n+2}) for n = 0..order, and the atomic measure whose
// n-th moment is a_n.
struct MomentSignature {
  std::vector<double> moments;
  std::vector<Atom> atoms;
  int order = 0;  // K

  // sum_j weight_j lambda_j^n.
  double measure_moment(int n) const;
  // max_n |a_n - measure_moment(n)| / (1 + |a_n|).
  double duality_defect() const;
};

// K >= 2 n - 1 moments are required to pin n atoms (kInvalidArgument).
MomentSignature moment_signature(const HermitianOperator& rho, int order,
                                 const Tolerances& tol = {});

// 2 n + 2 for the number n of distinct nonzero eigenvalues.
int default_moment_order(const HermitianOperator& rho, const Tolerances& tol = {});

struct SameOrbitResult {
  bool same = false;
  bool moments_agree = false;
  bool spectra_agree = false;
  bool anomaly = false;  // the two certificates disagree
};

// Moments within tol_rel (1 + |a_n|) for n <= order, and clustered spectra
// equal within cluster_tol. Both operators must be nonzero.
SameOrbitResult same_orbit(const HermitianOperator& rho, const HermitianOperator& nu, int order,
                           double tol_rel, const Tolerances& tol = {});

struct NormChain {
  double n1 = 0.0;
  double n2 = 0.0;
  double ninf = 0.0;
  bool chain_ok = false;  // n2 <= n1 <= 2N ninf <= 2N n2
};

// Norms of A - B for A, B of rank at most rank_cap (kRankExceeded otherwise).
NormChain norm_chain(const HermitianOperator& a, const HermitianOperator& b, int rank_cap,
                     const Tolerances& tol = {});

struct ProjectiveDistances {
  double geodesic = 0.0;    // sqrt(2) arccos sqrt(Tr(PR))
  double trace_dist = 0.0;  // Tr|P - R|
  double relation_defect = 0.0;  // |trace_dist - 2 |sin(geodesic / sqrt 2)||
};

// Both projections must have rank one (kRankMismatch).
ProjectiveDistances projective_distances(const OrthProjection& p, const OrthProjection& r,
                                         const Tolerances& tol = {});

struct ExamplePrediction {
  std::vector<double> efe_spectrum;  // |alpha_j|^2, descending
  double hs_sq = 0.0;                // 2 (N - sum |alpha_j|^2)
  double op_norm = 0.0;              // max sqrt(1 - |alpha_j|^2)
};

struct ExamplePair {
  OrthProjection e;
  OrthProjection f;
  ExamplePrediction expected;
};

// E spans e_j = basis vector j, F spans f_j = alpha_j e_j + beta_j e_{N+j}
// with beta_j = sqrt(1 - |alpha_j|^2). Needs dim >= 2 N (kDimensionTooSmall)
// and 0 < |alpha_j| < 1 (kInvalidArgument).
ExamplePair example_pair_generator(int dim, const std::vector<Complex>& alpha,
                                   const Tolerances& tol = {});

}  // namespace orbitkit

#endif  // ORBITKIT_INVARIANTS_HPP_
