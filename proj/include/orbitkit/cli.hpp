// Copyright 2026 The orbitkit Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ORBITKIT_CLI_HPP_
#define ORBITKIT_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace orbitkit {

// Runs one command line (without the program name) and returns the exit
// code: 0 ok, 2 hypothesis violated, 3 tolerance ambiguity, 4 I/O or
// format error, 1 for usage errors and failed suites. A single-line JSON
// RunReport goes to `out`; human-readable diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace orbitkit

#endif  // ORBITKIT_CLI_HPP_
