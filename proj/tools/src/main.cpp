#include <iostream>

#include "madkit_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return madkit::cli::run(args, std::cout, std::cerr);
}
