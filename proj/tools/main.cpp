#include <iostream>

#include "smlab/io.hpp"

int main(int argc, char** argv) {
  return smlab::run_cli(argc, argv, std::cout, std::cerr);
}
