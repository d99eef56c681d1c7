#include <iostream>

#include "qcox/cli.hpp"

int main(int argc, char** argv) { return qcox::run_cli(argc, argv, std::cout, std::cerr); }
