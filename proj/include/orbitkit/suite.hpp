// Copyright 2026 The orbitkit Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ORBITKIT_SUITE_HPP_
#define ORBITKIT_SUITE_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "orbitkit/config.hpp"

namespace orbitkit {

struct CheckTally {
  int runs = 0;
  int failures = 0;
  double worst = 0.0;  // largest residual seen (0 for flag-only checks)
};

struct SuiteResult {
  std::uint64_t seed = 0;
  int instances = 0;
  std::map<std::string, CheckTally> checks;
  std::vector<std::string> failure_log;  // first failures, in instance order
  int hypothesis_rejections = 0;         // orbit instances outside the hypothesis

  int failures() const;
  nlohmann::json to_json() const;
};

// Runs the invariant battery of every module on `count` seeded instances.
// Instances are independent and may run on several threads; the result is
// assembled in instance order, so it only depends on (seed, count, tol).
SuiteResult run_suite(std::uint64_t seed, int count, const Tolerances& tol = {},
                      unsigned threads = 0);

}  // namespace orbitkit

#endif  // ORBITKIT_SUITE_HPP_
