#include "ncsurf/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return ncsurf::cli_main(argc, argv, std::cout, std::cerr); }
