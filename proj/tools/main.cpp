#include <iostream>

#include "msseg/cli.hpp"

int main(int argc, char** argv) { return msseg::cli::main(argc, argv, std::cout, std::cerr); }
