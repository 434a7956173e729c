#include <iostream>

#include "cantorkit_cli.hpp"

int main(int argc, char** argv) { return cantorkit::cli::run(argc, argv, std::cout, std::cerr); }
