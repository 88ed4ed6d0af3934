#include <iostream>

#include "susypt_cli/app.hpp"

int main(int argc, char** argv) { return susypt::cli::run(argc, argv, std::cout, std::cerr); }
