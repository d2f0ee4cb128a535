#include <iostream>

#include "toda/cli.hpp"

int main(int argc, char** argv) {
  return toda::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
