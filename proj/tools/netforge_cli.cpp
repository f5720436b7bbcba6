#include <iostream>

#include "netforge/cli.hpp"

int main(int argc, char** argv) { return netforge::run_cli(argc, argv, std::cout, std::cerr); }
