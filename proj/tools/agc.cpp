#include <iostream>

#include "agc/cli.hpp"

int main(int argc, char** argv) { return agc::cli::run(argc, argv, std::cout, std::cerr); }
