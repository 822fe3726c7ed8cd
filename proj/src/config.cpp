// Copyright 2026 The orbitkit Authors.
// SPDX-License-Identifier: Apache-2.0

#include "orbitkit/config.hpp"

#include <cstdlib>
#include <fstream>

#include <json.hpp>

#include "orbitkit/error.hpp"

namespace orbitkit {

Tolerances load_tolerances(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kFormatError, "cannot open tolerance file " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kFormatError, path + ": " + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::kFormatError, path + ": expected an object");

  Tolerances tol;
  for (const auto& [key, value] : doc.items()) {
    if (key == "max_sweeps") {
      if (!value.is_number_integer() || value.get<int>() < 1)
        throw Error(ErrorCode::kFormatError, path + ": max_sweeps must be a positive integer");
      tol.max_sweeps = value.get<int>();
      continue;
    }
    double* slot = nullptr;
    if (key == "sym_tol") slot = &tol.sym_tol;
    else if (key == "proj_tol") slot = &tol.proj_tol;
    else if (key == "meet_tol") slot = &tol.meet_tol;
    else if (key == "ortho_tol") slot = &tol.ortho_tol;
    else if (key == "recon_tol") slot = &tol.recon_tol;
    else if (key == "cluster_tol") slot = &tol.cluster_tol;
    else if (key == "lagrange_tol") slot = &tol.lagrange_tol;
    else if (key == "ker_tol") slot = &tol.ker_tol;
    if (slot == nullptr) throw Error(ErrorCode::kFormatError, path + ": unknown key " + key);
    if (!value.is_number() || !(value.get<double>() > 0.0))
      throw Error(ErrorCode::kFormatError, path + ": " + key + " must be a positive number");
    *slot = value.get<double>();
  }
  return tol;
}

Tolerances tolerances_from_env() {
  const char* path = std::getenv("ORBITKIT_TOL_FILE");
  if (path == nullptr || *path == '\0') return Tolerances{};
  return load_tolerances(path);
}

}  // namespace orbitkit
