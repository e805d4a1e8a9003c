#include <iostream>

#include "finitype/cli.hpp"

int main(int argc, char** argv) { return finitype::cli::run(argc, argv, std::cout, std::cerr); }
