#include <iostream>

#include "twoslope/cli.hpp"

int main(int argc, char** argv) { return twoslope::run_cli(argc, argv, std::cout, std::cerr); }
