#include <iostream>

#include "pbg/cli.hpp"

int main(int argc, char** argv) { return pbg::run(argc, argv, std::cout, std::cerr); }
