#include <iostream>

#include "wallcross/commands.hpp"

int main(int argc, char** argv) {
  return wallcross::run_cli(argc, argv, std::cout, std::cerr);
}
