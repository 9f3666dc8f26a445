#include <iostream>
#include <string>
#include <vector>

#include "gdl/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  gdl::cli::Outcome o = gdl::cli::dispatch(args);
  std::cout << o.output;
  return o.exit_code;
}
