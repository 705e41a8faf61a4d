#include <iostream>

#include "intercept/commands.hpp"

int main(int argc, char** argv) { return intercept::cli::run_cli(argc, argv, std::cout, std::cerr); }
