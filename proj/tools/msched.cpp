#include <iostream>
#include <string>
#include <vector>

#include "msched/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return msched::run_cli(args, std::cout, std::cerr);
}
