#include <iostream>
#include <string>
#include <vector>

#include "bessel_br/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bessel_br::cli::run(args, std::cout, std::cerr);
}
