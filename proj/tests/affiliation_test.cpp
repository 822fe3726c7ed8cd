// Copyright 2026 The orbitkit Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>

#include <doctest.h>

#include "helpers.hpp"
#include "orbitkit/affiliation.hpp"
#include "orbitkit/invariants.hpp"
#include "orbitkit/random.hpp"

namespace orbitkit {
namespace {

using testing::diag;
using testing::error_of;
using testing::line;
using testing::max_abs_diff;
using testing::proj;
using testing::vec;

TEST_CASE("split") {
  SUBCASE("equal projections") {
    const OrthProjection e = proj({1, 1, 0});
    const ProjectionPairSplit s = split(e, e);
    CHECK(max_abs_diff(s.q.matrix(), e.matrix()) < 1e-14);
    CHECK(s.n_prime == 0);
    CHECK(s.e_prime.rank() == 0);
    CHECK(s.f_prime.rank() == 0);
  }
  SUBCASE("two lines at 45 degrees") {
    const double r = 1.0 / std::sqrt(2.0);
    const OrthProjection e = line(vec({1.0, 0.0}));
    const OrthProjection f = line(vec({r, r}));
    const ProjectionPairSplit s = split(e, f);
    CHECK(s.q.rank() == 0);
    CHECK(s.n_prime == 1);
    CHECK(max_abs_diff(s.e_prime.matrix(), e.matrix()) < 1e-14);
    CHECK(max_abs_diff(s.f_prime.matrix(), f.matrix()) < 1e-14);
  }
  SUBCASE("commuting diagonals") {
    const ProjectionPairSplit s = split(proj({1, 1, 0, 0}), proj({1, 0, 1, 0}));
    CHECK(max_abs_diff(s.q.matrix(), diag({1, 0, 0, 0})) < 1e-14);
    CHECK(max_abs_diff(s.e_prime.matrix(), diag({0, 1, 0, 0})) < 1e-14);
    CHECK(max_abs_diff(s.f_prime.matrix(), diag({0, 0, 1, 0})) < 1e-14);
  }
}

TEST_CASE("affiliate two lines at 60 degrees") {
  const double theta = std::numbers::pi / 3.0;
  const AffiliatedBases b = affiliate(line(vec({1.0, 0.0})), line(vec({std::cos(theta), std::sin(theta)})));
  REQUIRE(b.size() == 1);
  CHECK(max_abs_diff(b.e.col(0), vec({1.0, 0.0})) < 1e-15);
  CHECK(max_abs_diff(b.f.col(0), vec({0.5, std::sqrt(3.0) / 2.0})) < 1e-15);
  CHECK(max_abs_diff(b.e_perp.col(0), vec({0.0, 1.0})) < 1e-15);
  CHECK(std::abs(b.alpha[0] - Complex(0.5)) < 1e-15);
  CHECK(std::abs(b.beta[0] - Complex(std::sqrt(3.0) / 2.0)) < 1e-15);
}

TEST_CASE("affiliate the generator pair") {
  const ExamplePair ex = example_pair_generator(4, {std::cos(std::numbers::pi / 6), std::cos(std::numbers::pi / 4)});
  const AffiliatedBases b = affiliate(ex.e, ex.f);
  REQUIRE(b.size() == 2);
  CHECK(b.overlaps[0] == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-14));
  CHECK(b.overlaps[1] == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-14));
  // EFE eigenvalues are the squared overlaps.
  CHECK(b.overlaps[0] * b.overlaps[0] == doctest::Approx(0.75));
  CHECK(b.overlaps[1] * b.overlaps[1] == doctest::Approx(0.5));
}

TEST_CASE("affiliate rejects orthogonal, shared and mismatched pairs") {
  CHECK(error_of([] { affiliate(proj({0, 1, 0, 0}), proj({0, 0, 1, 0})); }) == ErrorCode::kKernelHit);
  CHECK(error_of([] { affiliate(proj({1, 1, 0, 0}), proj({1, 0, 1, 0})); }) == ErrorCode::kToleranceAmbiguity);
  CHECK(error_of([] { affiliate(proj({1, 1, 0}), proj({1, 0, 0})); }) == ErrorCode::kRankMismatch);
}

TEST_CASE("affiliated bases are cross-orthogonal with positive overlaps") {
  SplitMix64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = rng.uniform_int(1, 4);
    const int d = rng.uniform_int(2 * n, 2 * n + 5);
    const OrthProjection e = random_projection(d, n, rng);
    const OrthProjection f = random_projection(d, n, rng);
    const AffiliatedBases b = affiliate(e, f);
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const Complex ip = b.f.col(j).dot(b.e.col(k));
        if (j == k) {
          CHECK(ip.real() > 0.0);
          CHECK(std::abs(ip.imag()) < 1e-10);
        } else {
          CHECK(std::abs(ip) < 1e-10);
        }
      }
      CHECK((b.f.col(j) - b.alpha[j] * b.e.col(j) - b.beta[j] * b.e_perp.col(j)).norm() < 1e-10);
      CHECK((e.basis().adjoint() * b.e_perp.col(j)).norm() < 1e-10);
      CHECK(std::abs(b.beta[j].imag()) < 1e-10);
      CHECK(b.beta[j].real() > 0.0);
    }
    CHECK(op_norm(b.f * b.f.adjoint() - f.matrix()) < 1e-10);
  }
}

TEST_CASE("the analytic complement pair agrees with affiliating the complements directly") {
  SplitMix64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = rng.uniform_int(1, 3);
    const int d = 2 * n + rng.uniform_int(0, 3);
    const OrthProjection e = random_projection(d, n, rng);
    const CMatrix u = unitary_exp(random_antihermitian(d, 0.5, rng));
    const OrthProjection f = OrthProjection::from_basis(u * e.basis());
    const ProjectionPairSplit s = split(e, f);
    REQUIRE(s.n_prime == n);
    const AffiliatedBases analytic = complement_pair(affiliate(s.e_prime, s.f_prime));
    const AffiliatedBases direct = affiliate(s.e_perp, s.f_perp);
    for (int j = 0; j < n; ++j) {
      CHECK(std::abs(analytic.overlaps[j] - direct.overlaps[j]) < 1e-10);
      CHECK(std::abs(std::abs(analytic.e.col(j).dot(direct.e.col(j))) - 1.0) < 1e-10);
      CHECK(std::abs(std::abs(analytic.f.col(j).dot(direct.f.col(j))) - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("no kernel hit under the proximity condition") {
  SplitMix64 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = rng.uniform_int(1, 3);
    const int d = rng.uniform_int(2 * n + 1, 2 * n + 4);
    const OrthProjection e = random_projection(d, n, rng);
    const CMatrix u = unitary_exp(random_antihermitian(d, 1.2 * rng.uniform(), rng));
    const OrthProjection f = OrthProjection::from_basis(u * e.basis());
    if (!proximity_check(e, f).satisfied || meet(e, f).rank() != 0) continue;
    CHECK_NOTHROW(affiliate(e, f));
  }
}

TEST_CASE("proximity check") {
  const OrthProjection e = line(vec({1.0, 0.0}));
  ProximityCheck p = proximity_check(e, e);
  CHECK(p.hs_sq == 0.0);
  CHECK(p.satisfied);
  p = proximity_check(e, line(vec({0.0, 1.0})));
  CHECK(p.hs_sq == doctest::Approx(2.0));
  CHECK_FALSE(p.satisfied);
  p = proximity_check(e, line(vec({std::sqrt(0.75), 0.5})));
  CHECK(p.hs_sq == doctest::Approx(0.5));
  CHECK(p.satisfied);
}

TEST_CASE("degenerate overlaps keep the bases cross-orthogonal") {
  SplitMix64 rng(13);
  const ExamplePair ex = example_pair_generator(8, {0.9, 0.9, 0.9});
  // Hide the standard-basis structure behind a random unitary.
  const CMatrix w = random_unitary(8, rng);
  const OrthProjection e = OrthProjection::from_basis(w * ex.e.basis());
  const OrthProjection f = OrthProjection::from_basis(w * ex.f.basis());
  const AffiliatedBases b = affiliate(e, f);
  REQUIRE(b.size() == 3);
  for (int j = 0; j < 3; ++j) {
    CHECK(b.overlaps[j] == doctest::Approx(0.9).epsilon(1e-12));
    for (int k = 0; k < 3; ++k) {
      if (j != k) CHECK(std::abs(b.f.col(j).dot(b.e.col(k))) < 1e-10);
      if (j != k) CHECK(std::abs(b.f.col(j).dot(b.f.col(k))) < 1e-10);
    }
  }
}

TEST_CASE("affiliating generator pairs recovers the overlaps in descending order") {
  const ExamplePair ex = example_pair_generator(9, {Complex(0.2, 0.3), 0.9, Complex(0.0, -0.6), 0.5});
  const AffiliatedBases b = affiliate(ex.e, ex.f);
  const std::vector<double> expected = {0.9, 0.6, 0.5, std::abs(Complex(0.2, 0.3))};
  REQUIRE(b.size() == 4);
  for (int j = 0; j < 4; ++j) CHECK(b.overlaps[j] == doctest::Approx(expected[j]).epsilon(1e-12));
}

}  // namespace
}  // namespace orbitkit
