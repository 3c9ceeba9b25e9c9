#include <iostream>

#include "optkit/cli.hpp"

int main(int argc, char** argv) { return optkit::execute(argc, argv, std::cout, std::cerr); }
