#include <iostream>
#include <string>
#include <vector>

#include "certhull/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return certhull::run_cli(args, std::cout, std::cerr);
}
