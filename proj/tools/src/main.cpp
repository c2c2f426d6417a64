#include <iostream>

#include "ncpgd_cli/commands.hpp"

int main(int argc, char** argv) { return ncpgd::cli::run(argc, argv, std::cout, std::cerr); }
