// Copyright 2026 The orbitkit Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ORBITKIT_INTERTWINER_HPP_
#define ORBITKIT_INTERTWINER_HPP_

#include <vector>

#include "orbitkit/config.hpp"
#include "orbitkit/linalg.hpp"

namespace orbitkit {

// A unitary v carrying one operator onto another, with the audited
// quantities of the construction. The bound chain is
//   ||v - I||^2 <= ||v - I||_2^2 <= 2 sum delta_j + 2 delta <= 4 sum delta_j < eps^2.
struct IntertwinerCertificate {
  CMatrix v;
  double epsilon = 0.0;
  std::vector<double> delta_j;  // N_j - Tr(E_j F_j)
  double delta = 0.0;           // N - Tr(E F) over the whole support
  double op_norm_dev = 0.0;     // ||v - I||
  double hs_norm_dev = 0.0;     // ||v - I||_2
  double conjugation_residual = 0.0;  // ||v A v* - B||_1
  double unitarity_defect = 0.0;      // ||v* v - I||
  double locality_defect = 0.0;       // ||(v - I)(I - E join F)||
  bool bound_ok = false;

  double delta_sum() const;
  double hs_bound() const { return 2.0 * delta_sum() + 2.0 * delta; }  // 2 sum delta_j + 2 delta
  double total_bound() const { return 4.0 * delta_sum(); }             // 4 sum delta_j
};

// Slack for floating point comparisons along the bound chain.
inline constexpr double kChainSlack = 1e-12;

// Checks every link of the bound chain separately and op_norm_dev < epsilon.
struct ChainCheck {
  bool op_le_hs = false;
  bool hs_le_hs_bound = false;
  bool delta_le_sum = false;  // within 1e-10
  bool below_epsilon = false;
  bool all() const { return op_le_hs && hs_le_hs_bound && delta_le_sum && below_epsilon; }
};

ChainCheck check_chain(const IntertwinerCertificate& cert);

// Unitary u with F = u E u* and ||u - I|| < eps, for equal-rank E, F with
// N - Tr(EF) < eps^2 / 4 and 0 < eps < 2 (kHypothesisViolated otherwise).
// u is the identity off E' join F' and maps e_j -> f_j, e_perp_j -> f_perp_j.
IntertwinerCertificate projection_intertwiner(const OrthProjection& e, const OrthProjection& f,
                                              double epsilon, const Tolerances& tol = {});

struct DeltaAudit {
  std::vector<double> delta_j;
  double delta = 0.0;
};

// Block defects between the spectral projections of an isospectral pair.
// Raises kNotIsospectral when the clustered spectra differ.
DeltaAudit delta_audit(const HermitianOperator& rho, const HermitianOperator& rho_prime,
                       const Tolerances& tol = {});

// Unitary v with v rho v* = rho' and ||v - I|| < eps for an isospectral pair
// with sum delta_j < eps^2 / 4 and 0 < eps^2 < 1. v is the identity off
// E join F, maps each block's affiliated basis onto its partner and the
// complementary pair (E join F - E, E join F - F) likewise.
IntertwinerCertificate orbit_intertwiner(const HermitianOperator& rho,
                                         const HermitianOperator& rho_prime, double epsilon,
                                         const Tolerances& tol = {});

}  // namespace orbitkit

#endif  // ORBITKIT_INTERTWINER_HPP_
