#include <iostream>
#include <string>
#include <vector>

#include "nuhyp/report.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return nuhyp::run_cli(args, std::cout, std::cerr);
}
