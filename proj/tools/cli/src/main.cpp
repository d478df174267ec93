#include <iostream>

#include "plateopt/cli/app.hpp"

int main(int argc, char** argv) { return plateopt::cli::run_cli(argc, argv, std::cout, std::cerr); }
