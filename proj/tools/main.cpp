#include <iostream>

#include "infolab/cli.hpp"

int main(int argc, char** argv) { return infolab::run_cli(argc, argv, std::cout, std::cerr); }
