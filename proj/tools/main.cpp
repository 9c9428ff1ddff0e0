#include "superres/scenario.hpp"

#include <iostream>

int main(int argc, char **argv) {
  return superres::scenario::run_cli(argc, argv, std::cout, std::cerr);
}
