#include <iostream>

#include "nullwave/cli.hpp"

int main(int argc, char** argv) { return nullwave::cli::run(argc, argv, std::cout, std::cerr); }
