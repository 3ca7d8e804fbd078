#include <iostream>
#include <vector>

#include "famalyze/cli.hpp"

int main(int argc, char **argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return famalyze::cli_main(std::move(args), std::cout, std::cerr);
}
