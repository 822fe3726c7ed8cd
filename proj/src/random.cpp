// Copyright 2026 The orbitkit Authors.
// SPDX-License-Identifier: Apache-2.0

#include "orbitkit/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "orbitkit/error.hpp"

namespace orbitkit {

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double SplitMix64::normal() {
  const double u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

int SplitMix64::uniform_int(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(next() % span);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 mix(seed ^ (index * 0xD1B54A32D192ED03ULL));
  return mix.next();
}

CMatrix random_gaussian(int rows, int cols, SplitMix64& rng) {
  CMatrix g(rows, cols);
  const double scale = std::sqrt(0.5);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(i, j) = Complex(re * scale, im * scale);
    }
  return g;
}

CMatrix random_unitary(int dim, SplitMix64& rng) {
  const Eigen::HouseholderQR<CMatrix> qr(random_gaussian(dim, dim, rng));
  CMatrix q = qr.householderQ();
  const CMatrix& r = qr.matrixQR();
  for (int k = 0; k < dim; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

CMatrix random_antihermitian(int dim, double norm, SplitMix64& rng) {
  const CMatrix g = random_gaussian(dim, dim, rng);
  const CMatrix a = 0.5 * (g - g.adjoint());
  const double current = op_norm(a);
  if (current == 0.0) return a;
  return a * (norm / current);
}

CMatrix unitary_exp(const CMatrix& antihermitian) {
  const CMatrix h = Complex(0.0, -1.0) * antihermitian;
  const Eigensystem es = eigh_unchecked(0.5 * (h + h.adjoint()));
  CVector phases(es.size());
  for (int k = 0; k < es.size(); ++k) phases(k) = std::polar(1.0, es.values(k));
  return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
}

HermitianOperator random_hermitian(int dim, SplitMix64& rng) {
  const CMatrix g = random_gaussian(dim, dim, rng);
  return HermitianOperator(0.5 * (g + g.adjoint()));
}

HermitianOperator operator_with_spectrum(int dim, const std::vector<std::pair<double, int>>& spectrum,
                                         SplitMix64& rng) {
  RVector diag = RVector::Zero(dim);
  int k = 0;
  for (const auto& [lambda, mult] : spectrum) {
    if (mult < 1) throw Error(ErrorCode::kInvalidArgument, "multiplicities must be positive");
    for (int i = 0; i < mult; ++i) {
      if (k == dim) throw Error(ErrorCode::kDimensionTooSmall, "spectrum does not fit the dimension");
      diag(k++) = lambda;
    }
  }
  const CMatrix w = random_unitary(dim, rng);
  const CMatrix m = w * diag.cast<Complex>().asDiagonal() * w.adjoint();
  return HermitianOperator(0.5 * (m + m.adjoint()));
}

OrthProjection random_projection(int dim, int rank, SplitMix64& rng) {
  if (rank < 0 || rank > dim) throw Error(ErrorCode::kInvalidArgument, "rank out of range");
  if (rank == 0) return OrthProjection::zero(dim);
  return OrthProjection::from_basis(random_unitary(dim, rng).leftCols(rank));
}

std::vector<std::pair<double, int>> random_spectrum(int blocks, int max_multiplicity,
                                                    SplitMix64& rng) {
  if (blocks < 1 || blocks > 8 || max_multiplicity < 1)
    throw Error(ErrorCode::kInvalidArgument, "spectrum shape out of range");
  std::vector<std::pair<double, int>> out;
  while (static_cast<int>(out.size()) < blocks) {
    const double mag = 0.1 + 0.9 * rng.uniform();
    const double lambda = rng.uniform() < 0.5 ? -mag : mag;
    bool separated = true;
    for (const auto& [other, mult] : out) separated = separated && std::abs(other - lambda) >= 0.05;
    if (separated) out.emplace_back(lambda, rng.uniform_int(1, max_multiplicity));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  return out;
}

OrbitPair orbit_pair(int dim, const std::vector<std::pair<double, int>>& spectrum, double perturb,
                     SplitMix64& rng) {
  if (!(perturb >= 0.0) || !std::isfinite(perturb))
    throw Error(ErrorCode::kInvalidArgument, "perturbation must be finite and nonnegative");
  HermitianOperator rho = operator_with_spectrum(dim, spectrum, rng);
  CMatrix u = unitary_exp(random_antihermitian(dim, perturb, rng));
  const CMatrix moved = u * rho.matrix() * u.adjoint();
  HermitianOperator rho_prime(0.5 * (moved + moved.adjoint()));
  return {std::move(rho), std::move(rho_prime), std::move(u)};
}

}  // namespace orbitkit
