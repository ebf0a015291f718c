#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "dlpq_cli.hpp"

int main(int argc, char **argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dlpq::cli::run(args, std::cout, std::cerr, std::getenv("DLPQ_BACKEND"));
}
