#include <iostream>

#include "iontrap/cli/commands.hpp"

int main(int argc, char** argv) { return iontrap::cli::run_cli(argc, argv, std::cout, std::cerr); }
