#include <iostream>

#include "spincat/cli.hpp"

int main(int argc, char** argv) { return spincat::cli_main(argc, argv, std::cout, std::cerr); }
