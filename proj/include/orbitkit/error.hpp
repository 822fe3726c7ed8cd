// Copyright 2026 The orbitkit Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ORBITKIT_ERROR_HPP_
#define ORBITKIT_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace orbitkit {

enum class ErrorCode {
  kNonConvergence,
  kToleranceAmbiguity,
  kClusterAmbiguity,
  kConditioningOverflow,
  kRankMismatch,
  kKernelHit,
  kHypothesisViolated,
  kNotIsospectral,
  kRankExceeded,
  kDimensionTooSmall,
  kInvalidArgument,
  kFormatError,
};

// Stable identifier used in reports, e.g. "HypothesisViolated".
std::string_view error_name(ErrorCode code);

// Process exit code for the command-line surface:
// 2 hypothesis violated, 3 tolerance ambiguity, 4 I/O or format, 1 otherwise.
int exit_code_for(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace orbitkit

#endif  // ORBITKIT_ERROR_HPP_
