#include <iostream>

#include "gtscore/cli.hpp"

int main(int argc, char** argv) { return gtscore::cli::run(argc, argv, std::cout, std::cerr); }
