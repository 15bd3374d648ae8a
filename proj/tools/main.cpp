#include <iostream>

#include "sfg/cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sfg::run_cli(args, std::cout, std::cerr);
}
