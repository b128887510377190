#include <iostream>

#include "dcalb_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dcalb::cli::run_cli(args, std::cout, std::cerr);
}
