#include <iostream>

#include "infarm/cli.hpp"

int main(int argc, char** argv) { return infarm::cli::main(argc, argv, std::cout, std::cerr); }
