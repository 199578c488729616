#include <iostream>
#include <string>
#include <vector>

#include "topweight/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return topweight::run_cli(args, std::cout, std::cerr);
}
