#include <iostream>

#include "assure/cli.h"

int main(int argc, char** argv) {
  return assure::cli::Run(argc, argv, std::cout, std::cerr);
}
