// Copyright 2026 The orbitkit Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ORBITKIT_CONFIG_HPP_
#define ORBITKIT_CONFIG_HPP_

#include <string>

namespace orbitkit {

// Every numerical threshold the library uses. Values are captured by the
// operations that take a Tolerances argument; nothing reads globals.
struct Tolerances {
  double sym_tol = 1e-12;      // max |A_jk - conj(A_kj)| for Hermitian input
  double proj_tol = 1e-9;      // idempotence / self-adjointness of projections
  double meet_tol = 1e-10;     // sin(angle) below which a direction is shared
  double ortho_tol = 1e-10;    // orthonormality of emitted vectors
  double recon_tol = 1e-9;     // spectral reconstruction, sup norm
  double cluster_tol = 1e-8;   // single-linkage gap for eigenvalue clusters
  double lagrange_tol = 1e-8;  // interpolation projector vs eigenprojector
  double ker_tol = 1e-10;      // smallest admissible eigenvalue of EFE
  int max_sweeps = 64;         // cyclic Jacobi sweep limit
};

// Reads a JSON object with any subset of the fields above. Unknown keys are
// rejected so typos do not silently fall back to defaults.
Tolerances load_tolerances(const std::string& path);

// Defaults, overridden by the file named in ORBITKIT_TOL_FILE if set.
Tolerances tolerances_from_env();

}  // namespace orbitkit

#endif  // ORBITKIT_CONFIG_HPP_
