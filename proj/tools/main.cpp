#include <iostream>

#include "cubecut/cli.hpp"

int main(int argc, char** argv) { return cubecut::run_cli(argc, argv, std::cout, std::cerr); }
