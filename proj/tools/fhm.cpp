#include <iostream>

#include "fh/cli/commands.hpp"

int main(int argc, char** argv) { return fh::cli::run(argc, argv, std::cout, std::cerr); }
