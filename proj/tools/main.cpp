#include <iostream>

#include "mkstar/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mkstar::run_cli(args, std::cout, std::cerr);
}
