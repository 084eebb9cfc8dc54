#include <iostream>
#include <string>
#include <vector>

#include "augcube/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return augcube::run_cli(args, std::cout, std::cerr);
}
