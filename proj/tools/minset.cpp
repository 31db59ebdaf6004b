#include <iostream>

#include "minset/cli.hpp"

int main(int argc, char** argv) { return minset::run_cli(argc, argv, std::cout, std::cerr); }
