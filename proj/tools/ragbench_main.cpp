#include "ragbench/cli/commands.hpp"

#include <iostream>

int main(int argc, char** argv) { return ragbench::cli::run_cli(argc, argv, std::cout, std::cerr); }
