#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) {
  return fuzzyload::cli::run_cli(argc, argv, std::cout, std::cerr);
}
