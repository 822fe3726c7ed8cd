// Copyright 2026 The orbitkit Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ORBITKIT_MATRIX_FILE_HPP_
#define ORBITKIT_MATRIX_FILE_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "orbitkit/config.hpp"
#include "orbitkit/linalg.hpp"

namespace orbitkit {

enum class MatrixKind { kHermitian, kProjection, kUnitary, kGeneral };

std::string_view kind_name(MatrixKind kind);

// On disk:
//   {"dim": d, "kind": "hermitian", "entries": [[re, im], ...], "meta": {...}}
// with entries in row-major order. Numbers are written in shortest
// round-trip form, so load(save(x)) is bit-exact.
struct MatrixFile {
  CMatrix entries;
  MatrixKind kind = MatrixKind::kGeneral;
  nlohmann::json meta = nlohmann::json::object();

  int dim() const { return static_cast<int>(entries.rows()); }
};

std::string to_json_text(const MatrixFile& file);

// Parses and re-validates the kind invariant (Hermiticity at sym_tol,
// projection at proj_tol, unitarity at ortho_tol). Every failure is
// kFormatError; JSON syntax errors carry the byte position.
MatrixFile parse_matrix_file(std::string_view text, const Tolerances& tol = {},
                             const std::string& source = "<memory>");

void save_matrix_file(const std::string& path, const MatrixFile& file);
MatrixFile load_matrix_file(const std::string& path, const Tolerances& tol = {});

std::string read_text_file(const std::string& path);

// "fnv1a64:" followed by 16 hex digits of the FNV-1a hash of the bytes.
std::string digest(std::string_view bytes);

// Single-line JSON report written by every command.
struct RunReport {
  std::string command;
  std::vector<std::string> inputs;  // digests
  std::vector<std::string> files;   // files written
  nlohmann::json outputs = nlohmann::json::object();
  std::string status = "ok";
  std::string message;
  std::int64_t elapsed_ms = 0;

  // Raises kInvalidArgument if any number in outputs is not finite.
  void require_finite() const;
  std::string to_json_line() const;
};

}  // namespace orbitkit

#endif  // ORBITKIT_MATRIX_FILE_HPP_
