// Copyright 2026 The orbitkit Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ORBITKIT_AFFILIATION_HPP_
#define ORBITKIT_AFFILIATION_HPP_

#include <vector>

#include "orbitkit/config.hpp"
#include "orbitkit/linalg.hpp"

namespace orbitkit {

// Decomposition of an equal-rank pair (E, F):
//   Q = E meet F, E' = E - Q, F' = F - Q,
//   E_perp = (E' join F') - E', F_perp = (E' join F') - F'.
struct ProjectionPairSplit {
  OrthProjection q;
  OrthProjection e_prime;
  OrthProjection f_prime;
  OrthProjection e_perp;
  OrthProjection f_perp;
  int n_prime = 0;
};

ProjectionPairSplit split(const OrthProjection& e, const OrthProjection& f,
                          const Tolerances& tol = {});

// Paired orthonormal systems of a pair (E, F) with E meet F = 0, stored as
// columns: e_j diagonalizes EFE (descending eigenvalue), f_j = F e_j / ||F e_j||,
// e_perp_j = E_perp f_j / ||E_perp f_j||, and f_j = alpha_j e_j + beta_j e_perp_j.
// Phases are fixed so that <f_j|e_j> and <e_perp_j|f_j> are real and positive.
struct AffiliatedBases {
  CMatrix e;
  CMatrix f;
  CMatrix e_perp;
  std::vector<Complex> alpha;
  std::vector<Complex> beta;
  std::vector<double> overlaps;  // <f_j|e_j>

  int size() const { return static_cast<int>(e.cols()); }
};

// Raises kRankMismatch for unequal ranks, kToleranceAmbiguity when the pair
// shares a direction (split first), and kKernelHit when an eigenvalue of EFE
// on range(E) is at most tol.ker_tol.
AffiliatedBases affiliate(const OrthProjection& e, const OrthProjection& f,
                          const Tolerances& tol = {});

// Affiliated bases of the complementary pair (E_perp, F_perp) obtained from
// those of (E', F'): e -> e_perp_j, f -> f_perp_j = -conj(beta_j) e_j + conj(alpha_j) e_perp_j.
// Each 2-plane span{e_j, e_perp_j} is invariant, so the two pairs share the
// overlaps alpha_j.
AffiliatedBases complement_pair(const AffiliatedBases& bases);

struct ProximityCheck {
  double hs_sq = 0.0;  // Tr[(E - F)^2]
  bool satisfied = false;  // hs_sq < 2
};

ProximityCheck proximity_check(const OrthProjection& e, const OrthProjection& f);

}  // namespace orbitkit

#endif  // ORBITKIT_AFFILIATION_HPP_
