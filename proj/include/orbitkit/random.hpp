// Copyright 2026 The orbitkit Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ORBITKIT_RANDOM_HPP_
#define ORBITKIT_RANDOM_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "orbitkit/linalg.hpp"

namespace orbitkit {

// SplitMix64 stream. Fixtures are reproducible from any language:
//   state += 0x9E3779B97F4A7C15
//   z = state; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB; return z ^ (z >> 31)
// uniform() = (next() >> 11) * 2^-53, normal() is Box-Muller on two
// consecutive uniforms u1, u2: sqrt(-2 ln(1 - u1)) cos(2 pi u2).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  double uniform();
  double normal();
  // Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi);

 private:
  std::uint64_t state_;
};

// Seed of the i-th instance of a suite seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Entries with independent N(0, 1/2) real and imaginary parts.
CMatrix random_gaussian(int rows, int cols, SplitMix64& rng);

// Haar-distributed unitary (QR of a Gaussian matrix with phase correction).
CMatrix random_unitary(int dim, SplitMix64& rng);

// Anti-Hermitian matrix scaled to operator norm `norm`.
CMatrix random_antihermitian(int dim, double norm, SplitMix64& rng);

// exp(A) for anti-Hermitian A, through the eigensystem of -iA.
CMatrix unitary_exp(const CMatrix& antihermitian);

HermitianOperator random_hermitian(int dim, SplitMix64& rng);

// W diag(l_1 (m_1 times), .., 0 ..) W* for a Haar unitary W.
HermitianOperator operator_with_spectrum(int dim, const std::vector<std::pair<double, int>>& spectrum,
                                         SplitMix64& rng);

OrthProjection random_projection(int dim, int rank, SplitMix64& rng);

// `blocks` distinct eigenvalues with |lambda| in [0.1, 1], pairwise at least
// 0.05 apart, each with multiplicity in [1, max_multiplicity]. Descending.
std::vector<std::pair<double, int>> random_spectrum(int blocks, int max_multiplicity,
                                                    SplitMix64& rng);

struct OrbitPair {
  HermitianOperator rho;
  HermitianOperator rho_prime;  // u rho u*
  CMatrix u;                    // exp(A) with ||A|| = perturb
};

// rho from operator_with_spectrum and its conjugate by exp of a seeded
// anti-Hermitian matrix of operator norm `perturb`.
OrbitPair orbit_pair(int dim, const std::vector<std::pair<double, int>>& spectrum, double perturb,
                     SplitMix64& rng);

}  // namespace orbitkit

#endif  // ORBITKIT_RANDOM_HPP_
