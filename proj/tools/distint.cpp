#include <iostream>

#include "distint/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return distint::run_cli(args, std::cout, std::cerr);
}
