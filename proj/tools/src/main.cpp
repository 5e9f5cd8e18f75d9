#include <iostream>

#include "knv/cli/commands.hpp"

int main(int argc, char** argv) { return knv::cli::run(argc, argv, std::cout, std::cerr); }
