#include <iostream>

#include "broadgen/cli.hpp"

int main(int argc, char** argv) {
  return broadgen::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
