#include <iostream>

#include "inner/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return inner::run_cli(args, std::cout, std::cerr);
}
