// Command-line front end; all logic lives in the library so tests can call
// cli_run in-process.
#include <iostream>
#include <string>
#include <vector>

#include "amo/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return amo::cli_run(args, std::cout, std::cerr);
}
