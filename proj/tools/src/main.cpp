#include <iostream>
#include <string>
#include <vector>

#include "cestim/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  const std::vector<std::string> args(argv + 1, argv + argc);
  return cestim::cli::run(args, std::cout, std::cerr);
}
