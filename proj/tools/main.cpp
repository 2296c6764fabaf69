#include <iostream>
#include <string>
#include <vector>

#include "swingcount/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return swingcount::cli::run(args, std::cout, std::cerr);
}
