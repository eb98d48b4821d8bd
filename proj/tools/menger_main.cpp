#include <iostream>

#include "menger/cli.hpp"

int main(int argc, char** argv) { return menger::cli::parse_and_dispatch(argc, argv, std::cout, std::cerr); }
