#include <iostream>

#include "cgeom/cli.hpp"

int main(int argc, char** argv) { return cgeom::cli::run(argc, argv, std::cout, std::cerr); }
