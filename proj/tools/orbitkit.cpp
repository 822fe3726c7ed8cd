// Copyright 2026 The orbitkit Authors.
// SPDX-License-Identifier: Apache-2.0

#include <iostream>
#include <string>
#include <vector>

#include "orbitkit/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return orbitkit::run_cli(args, std::cout, std::cerr);
}
