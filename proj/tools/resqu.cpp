#include <iostream>

#include "resqu/cli.hpp"

int main(int argc, char** argv) { return resqu::run_cli(argc, argv, std::cout, std::cerr); }
