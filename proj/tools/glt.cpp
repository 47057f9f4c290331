#include <iostream>

#include "glt/cli.hpp"

int main(int argc, char** argv) { return glt::run({argv + 1, argv + argc}, std::cout, std::cerr); }
