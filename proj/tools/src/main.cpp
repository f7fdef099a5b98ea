#include <iostream>

#include "ncortho/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ncortho::cli::run(args, std::cout, std::cerr);
}
