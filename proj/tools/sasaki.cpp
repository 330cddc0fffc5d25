// SPDX-License-Identifier: Apache-2.0

#include "sasaki/cli.hpp"

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return sasaki::cli::main_entry(args, std::cout, std::cerr);
}
