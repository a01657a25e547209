#include <iostream>

#include "levyreflect_cli/runner.hpp"

int main(int argc, char** argv) { return levyreflect::cli::main_entry(argc, argv, std::cout, std::cerr); }
