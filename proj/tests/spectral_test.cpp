// Copyright 2026 The orbitkit Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <doctest.h>

#include "helpers.hpp"
#include "orbitkit/random.hpp"
#include "orbitkit/spectral.hpp"

namespace orbitkit {
namespace {

using testing::diag;
using testing::error_of;
using testing::herm;
using testing::max_abs_diff;

TEST_CASE("decompose a diagonal operator") {
  const SpectralDecomposition d = decompose(herm({0.5, 0.5, 0.25, 0.0}));
  REQUIRE(d.blocks() == 2);
  CHECK(d.eigenvalues[0] == doctest::Approx(0.5));
  CHECK(d.eigenvalues[1] == doctest::Approx(0.25));
  CHECK(d.multiplicities == std::vector<int>{2, 1});
  CHECK(d.total_rank == 3);
  CHECK(max_abs_diff(d.projection(1).matrix(), diag({1, 1, 0, 0})) < 1e-14);
  CHECK(max_abs_diff(d.projection(2).matrix(), diag({0, 0, 1, 0})) < 1e-14);
  CHECK(max_abs_diff(d.projection(0).matrix(), diag({0, 0, 0, 1})) < 1e-14);
}

TEST_CASE("decompose is unitarily invariant") {
  SplitMix64 rng(21);
  const HermitianOperator rho = herm({0.5, 0.5, 0.25, 0.0});
  const CMatrix u = random_unitary(4, rng);
  const SpectralDecomposition a = decompose(rho);
  const SpectralDecomposition b = decompose(HermitianOperator(u * rho.matrix() * u.adjoint()));
  REQUIRE(a.blocks() == b.blocks());
  CHECK(a.multiplicities == b.multiplicities);
  for (int j = 0; j < a.blocks(); ++j) CHECK(std::abs(a.eigenvalues[j] - b.eigenvalues[j]) < 1e-13);
}

TEST_CASE("nearly equal eigenvalues merge into one cluster at the mean") {
  const SpectralDecomposition d = decompose(herm({1.0, 1.0 + 1e-13, 0.0}), 1e-9);
  REQUIRE(d.blocks() == 1);
  CHECK(d.multiplicities[0] == 2);
  CHECK(std::abs(d.eigenvalues[0] - (1.0 + 5e-14)) < 1e-15);
}

TEST_CASE("decompose reports gaps close to cluster_tol") {
  CHECK(error_of([] { decompose(herm({1.0, 1.0 + 5e-8}), 1e-8); }) == ErrorCode::kClusterAmbiguity);
  CHECK(error_of([] { decompose(herm({1.0, 5e-8}), 1e-8); }) == ErrorCode::kClusterAmbiguity);
  CHECK(decompose(herm({1.0, 1.0 + 5e-7}), 1e-8).blocks() == 2);
}

TEST_CASE("the zero operator has an empty spectrum and a full kernel") {
  const SpectralDecomposition d = decompose(herm({0.0, 0.0, 0.0}));
  CHECK(d.blocks() == 0);
  CHECK(d.kernel.rank() == 3);
}

TEST_CASE("lagrange projector") {
  SUBCASE("quadratic interpolation") {
    const HermitianOperator rho = herm({1.0, 2.0, 0.0});
    const SpectralDecomposition d = decompose(rho);
    // Blocks are descending: lambda_1 = 2, lambda_2 = 1.
    CHECK(max_abs_diff(lagrange_projector(rho, d, 2).matrix(), diag({1, 0, 0})) < 1e-14);
    CHECK(max_abs_diff(lagrange_projector(rho, d, 1).matrix(), diag({0, 1, 0})) < 1e-14);
  }
  SUBCASE("a projection is its own projector") {
    SplitMix64 rng(4);
    const OrthProjection p = random_projection(5, 2, rng);
    const HermitianOperator rho(p.matrix());
    CHECK(max_abs_diff(lagrange_projector(rho, decompose(rho), 1).matrix(), p.matrix()) < 1e-14);
  }
  SUBCASE("kernel index") {
    const HermitianOperator rho = herm({1.0, 0.0, 0.0});
    CHECK(max_abs_diff(lagrange_projector(rho, decompose(rho), 0).matrix(), diag({0, 1, 1})) < 1e-14);
  }
  SUBCASE("index out of range") {
    const HermitianOperator rho = herm({1.0, 0.0});
    CHECK(error_of([&] { lagrange_projector(rho, decompose(rho), 2); }) == ErrorCode::kInvalidArgument);
  }
}

TEST_CASE("lagrange projector matches the eigenprojector on random operators") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const auto spectrum = random_spectrum(rng.uniform_int(1, 4), 3, rng);
    int rank = 0;
    for (const auto& block : spectrum) rank += block.second;
    const int d = rng.uniform_int(rank, rank + 5);
    const HermitianOperator rho = operator_with_spectrum(d, spectrum, rng);
    const SpectralDecomposition decomp = decompose(rho);
    for (int j = 0; j <= decomp.blocks(); ++j)
      CHECK(op_norm(lagrange_projector(rho, decomp, j).matrix() - decomp.projection(j).matrix()) < 1e-8);
  }
}

TEST_CASE("reconstruct") {
  CHECK(max_abs_diff(reconstruct(decompose(herm({3, 3, 1}))).matrix(), diag({3, 3, 1})) < 1e-14);
  CHECK(max_abs_diff(reconstruct(decompose(herm({1, 1}))).matrix(), diag({1, 1})) < 1e-14);
  CHECK(max_abs_diff(reconstruct(decompose(herm({0.5, 0.5, 0.25, 0}))).matrix(), diag({0.5, 0.5, 0.25, 0})) <
        1e-14);
}

TEST_CASE("decompose after reconstruct returns the same data") {
  SplitMix64 rng(15);
  for (int trial = 0; trial < 20; ++trial) {
    const auto spectrum = random_spectrum(rng.uniform_int(1, 4), 3, rng);
    const HermitianOperator rho = operator_with_spectrum(14, spectrum, rng);
    const SpectralDecomposition a = decompose(rho);
    const SpectralDecomposition b = decompose(reconstruct(a));
    REQUIRE(a.blocks() == b.blocks());
    CHECK(a.multiplicities == b.multiplicities);
    for (int j = 0; j <= a.blocks(); ++j) {
      if (j > 0) CHECK(std::abs(a.node(j) - b.node(j)) < 1e-14);
      CHECK(op_norm(a.projection(j).matrix() - b.projection(j).matrix()) < 1e-9);
    }
  }
}

TEST_CASE("spectral projections move continuously along the orbit") {
  // rho_eps = u rho u* with ||u - I|| <= eps; the projections must follow
  // with ||F_j - E_j|| <= C eps for a finite C, shrinking as eps -> 0.
  SplitMix64 rng(8);
  const HermitianOperator rho = operator_with_spectrum(7, {{0.9, 2}, {0.4, 1}, {-0.3, 1}}, rng);
  const CMatrix a = random_antihermitian(7, 1.0, rng);
  const SpectralDecomposition base = decompose(rho);
  double previous = 1.0;
  double constant = 0.0;
  for (const double eps : {1e-2, 1e-3, 1e-4}) {
    const CMatrix u = unitary_exp(eps * a);
    REQUIRE(op_norm(u - CMatrix::Identity(7, 7)) <= eps);
    const SpectralDecomposition moved = decompose(HermitianOperator(u * rho.matrix() * u.adjoint()));
    REQUIRE(moved.blocks() == base.blocks());
    double worst = 0.0;
    for (int j = 0; j <= base.blocks(); ++j) {
      const CMatrix diff = moved.projection(j).matrix() - base.projection(j).matrix();
      const SchattenNorms n = schatten_norms(HermitianOperator(0.5 * (diff + diff.adjoint())));
      CHECK(n.op <= n.hs + 1e-12);
      CHECK(n.hs <= n.trace + 1e-12);
      worst = std::max(worst, n.op);
    }
    constant = std::max(constant, worst / eps);
    CHECK(worst < previous);
    previous = worst;
  }
  CHECK(constant <= 2.0 + 1e-6);
}

}  // namespace
}  // namespace orbitkit
