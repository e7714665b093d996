#include <iostream>

#include "compop/cli.hpp"

int main(int argc, char** argv) { return compop::cli::run(argc, argv, std::cout, std::cerr); }
