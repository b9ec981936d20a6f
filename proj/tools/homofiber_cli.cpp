#include <iostream>

#include "homofiber/cli.hpp"

int main(int argc, char** argv) { return homofiber::cli::run(argc, argv, std::cout, std::cerr); }
