#include <iostream>

#include "hier/cli/cli.hpp"

int main(int argc, char** argv) {
    return hier::run_cli(argc, argv, std::cout, std::cerr);
}
