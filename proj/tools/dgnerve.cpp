#include "dgnerve/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return dgn::run_cli(argc, argv, std::cout, std::cerr); }
