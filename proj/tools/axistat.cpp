#include <iostream>

#include "axistat/cli.hpp"

int main(int argc, char** argv) {
  return axistat::cli::run(argc, argv, std::cout, std::cerr);
}
