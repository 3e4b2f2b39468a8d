#include <iostream>
#include <string>
#include <vector>

#include "eqkh/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return eqkh::run_cli(args, std::cout, std::cerr);
}
