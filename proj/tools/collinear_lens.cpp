#include "collinear/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return collinear::cli_main(argc, argv, std::cout, std::cerr);
}
