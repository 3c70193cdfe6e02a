#include <iostream>

#include "rydpol/harness/cli.hpp"

int main(int argc, char** argv) { return rydpol::harness::run_cli(argc, argv, std::cout, std::cerr); }
