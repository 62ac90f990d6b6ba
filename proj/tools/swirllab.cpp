#include <swirllab/cli.hpp>

#include <iostream>

int main(int argc, char** argv) { return swirl::run_cli(argc, argv, std::cout, std::cerr); }
