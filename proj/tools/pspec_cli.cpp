#include "pspec/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return pspec::run_cli(argc, argv, std::cout, std::cerr); }
