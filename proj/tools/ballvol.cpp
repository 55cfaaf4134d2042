#include <iostream>

#include "ballvol/cli.hpp"

int main(int argc, char** argv) {
  try {
    return ballvol::cli::run(argc, argv, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "ballvol: " << e.what() << '\n';
    return 1;
  }
}
