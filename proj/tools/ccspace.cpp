#include <iostream>

#include "ccspace/cli.hpp"

int main(int argc, char** argv) { return ccspace::cli::main_entry(argc, argv, std::cout, std::cerr); }
