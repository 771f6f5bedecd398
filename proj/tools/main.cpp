#include <iostream>

#include "gop/cli.hpp"

int main(int argc, char** argv) {
  return gop::run_cli(argc, argv, std::cout, std::cerr);
}
