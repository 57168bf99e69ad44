#include <iostream>
#include <string>
#include <vector>

#include "sgb/cli_io.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sgb::run_command(args, std::cout, std::cerr);
}
