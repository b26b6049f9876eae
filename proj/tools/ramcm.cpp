#include <iostream>
#include <string>
#include <vector>

#include "ramcm/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ramcm::run_cli(args, std::cout, std::cerr);
}
