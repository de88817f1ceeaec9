#include <iostream>

#include "sidonpds/cli.hpp"

int main(int argc, char** argv) { return sidonpds::cli::run(argc, argv, std::cout, std::cerr); }
