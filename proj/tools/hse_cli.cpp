#include <iostream>

#include "hse/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hse::run_command(args, std::cout, std::cerr);
}
