// Copyright 2026 The orbitkit Authors.
// SPDX-License-Identifier: Apache-2.0

#include "orbitkit/error.hpp"

namespace orbitkit {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonConvergence: return "NonConvergence";
    case ErrorCode::kToleranceAmbiguity: return "ToleranceAmbiguity";
    case ErrorCode::kClusterAmbiguity: return "ClusterAmbiguity";
    case ErrorCode::kConditioningOverflow: return "ConditioningOverflow";
    case ErrorCode::kRankMismatch: return "RankMismatch";
    case ErrorCode::kKernelHit: return "KernelHit";
    case ErrorCode::kHypothesisViolated: return "HypothesisViolated";
    case ErrorCode::kNotIsospectral: return "NotIsospectral";
    case ErrorCode::kRankExceeded: return "RankExceeded";
    case ErrorCode::kDimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kFormatError: return "FormatError";
  }
  return "Unknown";
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kHypothesisViolated:
    case ErrorCode::kKernelHit:
    case ErrorCode::kNotIsospectral:
    case ErrorCode::kRankMismatch:
    case ErrorCode::kRankExceeded:
      return 2;
    case ErrorCode::kToleranceAmbiguity:
    case ErrorCode::kClusterAmbiguity:
    case ErrorCode::kConditioningOverflow:
    case ErrorCode::kNonConvergence:
      return 3;
    case ErrorCode::kFormatError:
      return 4;
    case ErrorCode::kDimensionTooSmall:
    case ErrorCode::kInvalidArgument:
      return 1;
  }
  return 1;
}

}  // namespace orbitkit
