#include <iostream>

#include "levelcost/cli.hpp"

int main(int argc, char** argv) {
  return levelcost::run_cli(argc, argv, std::cout, std::cerr);
}
