#include <iostream>

#include "holdref/cli/run_config.hpp"

int main(int argc, char** argv) {
  return holdref::cli::run_cli(argc, argv, std::cout, std::cerr);
}
