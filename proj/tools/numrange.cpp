#include <iostream>

#include "numrange/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return numrange::run(args, std::cout, std::cerr);
}
