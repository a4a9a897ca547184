#include <cstdio>
#include <cstdlib>
#include <iostream>

#include "gp2/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  bool fast_exit = false;
  int code = gp2::run_cli(args, std::cout, std::cerr, &fast_exit);
  if (fast_exit) {
    std::cout.flush();
    std::cerr.flush();
    std::fflush(nullptr);
    std::_Exit(code);
  }
  return code;
}
