// Copyright 2026 The orbitkit Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cstring>
#include <fstream>
#include <string>

#include <doctest.h>

#include "helpers.hpp"
#include "orbitkit/config.hpp"
#include "orbitkit/matrix_file.hpp"
#include "orbitkit/random.hpp"
#include "temp_dir.hpp"

namespace orbitkit {
namespace {

using testing::diag;
using testing::error_of;
using testing::TempDir;

bool bit_equal(const CMatrix& a, const CMatrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::memcmp(a.data(), b.data(), sizeof(Complex) * static_cast<std::size_t>(a.size())) == 0;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream(path) << text;
}

TEST_CASE("identity roundtrips exactly") {
  TempDir dir;
  const MatrixFile file{CMatrix::Identity(2, 2), MatrixKind::kHermitian, {}};
  save_matrix_file(dir.file("id.json"), file);
  const MatrixFile back = load_matrix_file(dir.file("id.json"));
  CHECK(bit_equal(back.entries, file.entries));
  CHECK(back.kind == MatrixKind::kHermitian);
}

TEST_CASE("random Hermitian roundtrips bit for bit") {
  TempDir dir;
  SplitMix64 rng(8);
  MatrixFile file{random_hermitian(8, rng).matrix(), MatrixKind::kHermitian, {{"seed", 8}}};
  save_matrix_file(dir.file("h.json"), file);
  const MatrixFile back = load_matrix_file(dir.file("h.json"));
  CHECK(bit_equal(back.entries, file.entries));
  CHECK(back.meta["seed"] == 8);
}

TEST_CASE("every kind is revalidated on load") {
  MatrixFile bad{diag({1.0 + 1e-3, 0.0}), MatrixKind::kProjection, {}};
  CHECK(error_of([&] { parse_matrix_file(to_json_text(bad)); }) == ErrorCode::kFormatError);
  CHECK(exit_code_for(ErrorCode::kFormatError) == 4);

  CMatrix skew = CMatrix::Zero(2, 2);
  skew(0, 1) = 1.0;
  CHECK(error_of([&] { parse_matrix_file(to_json_text({skew, MatrixKind::kHermitian, {}})); }) ==
        ErrorCode::kFormatError);
  CHECK_NOTHROW(parse_matrix_file(to_json_text({skew, MatrixKind::kGeneral, {}})));
  CHECK(error_of([&] { parse_matrix_file(to_json_text({2.0 * CMatrix::Identity(2, 2), MatrixKind::kUnitary, {}})); }) ==
        ErrorCode::kFormatError);
  SplitMix64 rng(1);
  CHECK_NOTHROW(parse_matrix_file(to_json_text({random_unitary(5, rng), MatrixKind::kUnitary, {}})));
}

TEST_CASE("malformed files carry a position") {
  try {
    parse_matrix_file("{\"dim\": 1, \"kind\": \"general\", \"entries\": [[1, 0]", {}, "broken.json");
    FAIL("expected a format error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kFormatError);
    CHECK(std::string(e.what()).find("at byte") != std::string::npos);
  }
  CHECK(error_of([] { parse_matrix_file(R"({"dim": 2, "kind": "general", "entries": [[1, 0]]})"); }) ==
        ErrorCode::kFormatError);
  CHECK(error_of([] { parse_matrix_file(R"({"dim": 1, "kind": "odd", "entries": [[1, 0]]})"); }) ==
        ErrorCode::kFormatError);
  CHECK(error_of([] { parse_matrix_file(R"({"dim": 1, "kind": "general", "entries": [[1]]})"); }) ==
        ErrorCode::kFormatError);
  CHECK(error_of([] { load_matrix_file("/nonexistent/orbitkit.json"); }) == ErrorCode::kFormatError);
}

TEST_CASE("digest is FNV-1a") {
  CHECK(digest("") == "fnv1a64:cbf29ce484222325");
  CHECK(digest("a") == "fnv1a64:af63dc4c8601ec8c");
}

TEST_CASE("run report") {
  RunReport report;
  report.command = "distance";
  report.outputs["x"] = 1.5;
  CHECK(report.to_json_line() ==
        R"({"command":"distance","elapsed_ms":0,"inputs":[],"outputs":{"x":1.5},"status":"ok"})");
  report.outputs["y"] = std::nan("");
  CHECK(error_of([&] { report.require_finite(); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("tolerance files") {
  TempDir dir;
  write_text(dir.file("tol.json"), R"({"cluster_tol": 1e-6, "max_sweeps": 80})");
  const Tolerances tol = load_tolerances(dir.file("tol.json"));
  CHECK(tol.cluster_tol == 1e-6);
  CHECK(tol.max_sweeps == 80);
  CHECK(tol.proj_tol == Tolerances{}.proj_tol);

  write_text(dir.file("typo.json"), R"({"clustr_tol": 1e-6})");
  CHECK(error_of([&] { load_tolerances(dir.file("typo.json")); }) == ErrorCode::kFormatError);
  write_text(dir.file("negative.json"), R"({"ker_tol": -1})");
  CHECK(error_of([&] { load_tolerances(dir.file("negative.json")); }) == ErrorCode::kFormatError);
}

}  // namespace
}  // namespace orbitkit
