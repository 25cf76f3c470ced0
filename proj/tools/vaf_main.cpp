#include <iostream>

#include "vaf/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return vaf::cli::run_command(std::move(args), std::cout, std::cerr);
}
