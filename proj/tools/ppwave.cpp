#include <iostream>

#include "ppwave/cli.hpp"

int main(int argc, char** argv) { return ppwave::cli::main_entry(argc, argv, std::cout, std::cerr); }
