#include <iostream>
#include <string>
#include <vector>

#include "mrfmoves/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mrfmoves::run_cli(args, std::cout, std::cerr);
}
