// Copyright 2026 The orbitkit Authors.
// SPDX-License-Identifier: Apache-2.0

#include "orbitkit/matrix_file.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "orbitkit/error.hpp"

namespace orbitkit {
namespace {

MatrixKind parse_kind(const std::string& name, const std::string& source) {
  if (name == "hermitian") return MatrixKind::kHermitian;
  if (name == "projection") return MatrixKind::kProjection;
  if (name == "unitary") return MatrixKind::kUnitary;
  if (name == "general") return MatrixKind::kGeneral;
  throw Error(ErrorCode::kFormatError, source + ": unknown kind \"" + name + "\"");
}

void validate_kind(const MatrixFile& file, const Tolerances& tol, const std::string& source) {
  try {
    switch (file.kind) {
      case MatrixKind::kHermitian:
        HermitianOperator(file.entries, tol);
        break;
      case MatrixKind::kProjection:
        OrthProjection::from_matrix(file.entries, tol);
        break;
      case MatrixKind::kUnitary: {
        const CMatrix& u = file.entries;
        const double defect = op_norm(u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols()));
        if (defect > tol.ortho_tol)
          throw Error(ErrorCode::kInvalidArgument, "unitarity defect " + std::to_string(defect));
        break;
      }
      case MatrixKind::kGeneral:
        break;
    }
  } catch (const Error& e) {
    throw Error(ErrorCode::kFormatError, source + ": " + std::string(kind_name(file.kind)) +
                                             " invariant fails: " + e.what());
  }
}

bool all_finite(const nlohmann::json& value) {
  if (value.is_number_float()) return std::isfinite(value.get<double>());
  if (value.is_structured()) {
    for (const auto& item : value) {
      if (!all_finite(item)) return false;
    }
  }
  return true;
}

}  // namespace

std::string_view kind_name(MatrixKind kind) {
  switch (kind) {
    case MatrixKind::kHermitian: return "hermitian";
    case MatrixKind::kProjection: return "projection";
    case MatrixKind::kUnitary: return "unitary";
    case MatrixKind::kGeneral: return "general";
  }
  return "general";
}

std::string to_json_text(const MatrixFile& file) {
  nlohmann::json doc;
  doc["dim"] = file.dim();
  doc["kind"] = std::string(kind_name(file.kind));
  nlohmann::json entries = nlohmann::json::array();
  for (int i = 0; i < file.dim(); ++i)
    for (int j = 0; j < file.dim(); ++j)
      entries.push_back({file.entries(i, j).real(), file.entries(i, j).imag()});
  doc["entries"] = std::move(entries);
  doc["meta"] = file.meta.is_null() ? nlohmann::json::object() : file.meta;
  return doc.dump() + "\n";
}

MatrixFile parse_matrix_file(std::string_view text, const Tolerances& tol, const std::string& source) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kFormatError,
                source + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  auto fail = [&](const std::string& why) { return Error(ErrorCode::kFormatError, source + ": " + why); };
  if (!doc.is_object()) throw fail("top level must be an object");
  if (!doc.contains("dim") || !doc["dim"].is_number_integer()) throw fail("missing integer \"dim\"");
  const long long dim = doc["dim"].get<long long>();
  if (dim < 1 || dim > 4096) throw fail("dim out of range");
  if (!doc.contains("kind") || !doc["kind"].is_string()) throw fail("missing string \"kind\"");
  if (!doc.contains("entries") || !doc["entries"].is_array()) throw fail("missing array \"entries\"");
  const nlohmann::json& entries = doc["entries"];
  if (entries.size() != static_cast<std::size_t>(dim * dim))
    throw fail("expected " + std::to_string(dim * dim) + " entries, found " +
               std::to_string(entries.size()));

  MatrixFile file;
  file.kind = parse_kind(doc["kind"].get<std::string>(), source);
  file.entries.resize(dim, dim);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const nlohmann::json& pair = entries[k];
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
      throw fail("entry " + std::to_string(k) + " is not a [re, im] pair");
    const double re = pair[0].get<double>();
    const double im = pair[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im)) throw fail("entry " + std::to_string(k) + " is not finite");
    file.entries(static_cast<Eigen::Index>(k / dim), static_cast<Eigen::Index>(k % dim)) = Complex(re, im);
  }
  if (doc.contains("meta")) {
    if (!doc["meta"].is_object()) throw fail("\"meta\" must be an object");
    file.meta = doc["meta"];
  }
  validate_kind(file, tol, source);
  return file;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFormatError, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void save_matrix_file(const std::string& path, const MatrixFile& file) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kFormatError, "cannot write " + path);
  out << to_json_text(file);
  if (!out) throw Error(ErrorCode::kFormatError, "write failed for " + path);
}

MatrixFile load_matrix_file(const std::string& path, const Tolerances& tol) {
  return parse_matrix_file(read_text_file(path), tol, path);
}

std::string digest(std::string_view bytes) {
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  for (const char c : bytes) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001B3ULL;
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(hash));
  return std::string("fnv1a64:") + hex;
}

void RunReport::require_finite() const {
  if (!all_finite(outputs)) throw Error(ErrorCode::kInvalidArgument, "report contains a non-finite value");
}

std::string RunReport::to_json_line() const {
  nlohmann::json doc;
  doc["command"] = command;
  doc["inputs"] = inputs;
  doc["outputs"] = outputs;
  doc["status"] = status;
  doc["elapsed_ms"] = elapsed_ms;
  if (!files.empty()) doc["files"] = files;
  if (!message.empty()) doc["message"] = message;
  return doc.dump();
}

}  // namespace orbitkit
