#include <iostream>

#include "attoclock/cli.hpp"

int main(int argc, char** argv) {
  return attoclock::cli::run(argc, argv, std::cout, std::cerr);
}
