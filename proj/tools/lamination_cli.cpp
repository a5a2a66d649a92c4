#include <iostream>
#include <string>
#include <vector>

#include "lamination/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return lamination::run_cli(args, std::cout, std::cerr);
}
