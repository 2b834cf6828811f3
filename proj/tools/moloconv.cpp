#include <iostream>

#include "moloconv/commands.hpp"

int main(int argc, char** argv) { return moloconv::cli::run(argc, argv, std::cout, std::cerr); }
