#include <iostream>

#include "curricula/cli.hpp"

int main(int argc, char** argv) {
  return curricula::cli::run(argc, argv, std::cout, std::cerr);
}
