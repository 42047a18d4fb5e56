#include <iostream>

#include "sagan/cli.hpp"

int main(int argc, char** argv) { return sagan::cli::run(argc, argv, std::cout, std::cerr); }
