#include <iostream>

#include "towerlift/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return towerlift::cli::run(args, std::cout, std::cerr);
}
