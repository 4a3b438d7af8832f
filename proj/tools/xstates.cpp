#include <iostream>
#include <string>
#include <vector>

#include "xstates/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return xstates::cli::run(args, std::cout, std::cerr);
}
