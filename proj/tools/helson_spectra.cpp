#include <iostream>
#include <string>
#include <vector>

#include "helson/dispatch.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return helson::run_cli(args, std::cout, std::cerr);
}
