#include <iostream>
#include <string>
#include <vector>

#include "geomis/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return geomis::cli_dispatch(args, std::cout, std::cerr);
}
