#include <iostream>
#include <string>
#include <vector>

#include "shoot/cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return shoot::cli::run(args, std::cout, std::cerr);
}
