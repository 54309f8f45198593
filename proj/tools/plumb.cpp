#include "plumbing/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return plumbing::run_cli(argc, argv, std::cout, std::cerr); }
