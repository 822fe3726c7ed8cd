// Copyright 2026 The orbitkit Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ORBITKIT_TESTS_HELPERS_HPP_
#define ORBITKIT_TESTS_HELPERS_HPP_

#include <initializer_list>

#include <doctest.h>

#include "orbitkit/error.hpp"
#include "orbitkit/linalg.hpp"

namespace orbitkit::testing {

inline CMatrix diag(std::initializer_list<double> values) {
  RVector d(static_cast<Eigen::Index>(values.size()));
  Eigen::Index k = 0;
  for (const double v : values) d(k++) = v;
  return d.cast<Complex>().asDiagonal();
}

inline HermitianOperator herm(std::initializer_list<double> values) { return HermitianOperator(diag(values)); }

inline OrthProjection proj(std::initializer_list<double> values) {
  return OrthProjection::from_matrix(diag(values));
}

// Rank-one projection onto span{x}.
inline OrthProjection line(const CVector& x) { return OrthProjection::from_basis(x.normalized()); }

inline CVector vec(std::initializer_list<Complex> values) {
  CVector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index k = 0;
  for (const Complex& z : values) v(k++) = z;
  return v;
}

// Largest entry modulus of a - b.
inline double max_abs_diff(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

template <typename F>
ErrorCode error_of(F&& body) {
  try {
    body();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an orbitkit::Error");
  return ErrorCode::kInvalidArgument;
}

}  // namespace orbitkit::testing

#endif  // ORBITKIT_TESTS_HELPERS_HPP_
