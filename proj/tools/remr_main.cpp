#include <iostream>
#include <string>
#include <vector>

#include "remr/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return remr::cli::run(args, std::cout, std::cerr);
}
