#include "minsurf/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return minsurf::cli::run_cli(argc, argv, std::cout, std::cerr); }
