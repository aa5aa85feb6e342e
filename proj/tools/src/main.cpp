#include <iostream>

#include "qplane_cli/cli.hpp"

int main(int argc, char** argv) {
  return qplane::cli::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
