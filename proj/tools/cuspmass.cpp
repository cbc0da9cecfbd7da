#include "cuspmass/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return cuspmass::cli::run(argc, argv, std::cout, std::cerr); }
