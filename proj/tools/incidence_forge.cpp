#include "forge/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return forge::cli::main(args, std::cout, std::cerr);
}
