#include <iostream>

#include "condtl/cli.hpp"

int main(int argc, char** argv) {
  return condtl::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
