#include <iostream>

#include "primstab/cli.hpp"

int main(int argc, char** argv) { return primstab::cli::run(argc, argv, std::cout, std::cerr); }
