#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return wpdet::cli::run(argc, argv, std::cout, std::cerr); }
