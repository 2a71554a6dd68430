#include <iostream>

#include "ceam/cli/runner.hpp"

int main(int argc, char** argv) {
  return ceam::cli::run_cli(argc, argv, std::cout, std::cerr);
}
