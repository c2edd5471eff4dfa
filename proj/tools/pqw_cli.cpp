#include "pqw/cli.hpp"

#include <iostream>

int main(int argc, char **argv) { return pqw::run_cli(argc, argv, std::cout, std::cerr); }
