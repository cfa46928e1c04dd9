#include <iostream>

#include "s2t/cli.hpp"

int main(int argc, char** argv) { return s2t::cli::main(argc, argv, std::cout, std::cerr); }
