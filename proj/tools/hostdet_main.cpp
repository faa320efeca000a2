#include <iostream>
#include <string>
#include <vector>

#include "hostdet/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hostdet::run_cli(args, std::cout, std::cerr);
}
