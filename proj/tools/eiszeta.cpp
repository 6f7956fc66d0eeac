#include <iostream>

#include "eiszeta/cli.hpp"

int main(int argc, char** argv) { return eiszeta::cli::run(argc, argv, std::cout, std::cerr); }
