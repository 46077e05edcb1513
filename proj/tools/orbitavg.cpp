#include <iostream>

#include "orbitavg/cli.hpp"

int main(int argc, char** argv) { return orbitavg::run_cli(argc, argv, std::cout, std::cerr); }
