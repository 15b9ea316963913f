#include <iostream>

#include "spacetext/cli.hpp"

int main(int argc, char** argv) {
  return spacetext::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
