#include <iostream>
#include <string>
#include <vector>

#include "sgspec/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const sg::cli::Result r = sg::cli::run(args);
  std::cout << r.out;
  std::cerr << r.err;
  return r.code;
}
