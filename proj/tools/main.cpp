#include <iostream>

#include "mcfrag/cli.hpp"

int main(int argc, char** argv) { return mcfrag::run_cli(argc, argv, std::cout, std::cerr); }
