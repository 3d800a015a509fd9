#include <iostream>
#include <string>
#include <vector>

#include "thw_cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return thw::cli::run(args, std::cout, std::cerr);
}
