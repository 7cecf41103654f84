#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return fracq::cli::run(argc, argv, std::cout, std::cerr); }
