#include <iostream>

#include "fusebench/bench/cli.hpp"

int main(int argc, char** argv) {
  return fusebench::bench::run_cli(argc, argv, std::cout, std::cerr);
}
