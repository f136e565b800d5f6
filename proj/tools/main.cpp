#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return gxray::cli::run_cli(argc, argv, std::cout, std::cerr); }
