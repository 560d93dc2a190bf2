#include <iostream>

#include "gafcell/cli/app.hpp"

int main(int argc, char** argv) { return gafcell::cli::run(argc, argv, std::cout, std::cerr); }
