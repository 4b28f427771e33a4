#include <iostream>
#include <string>
#include <vector>

#include "qcc/cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return qcc::cli::run_cli(args, std::cout, std::cerr);
}
