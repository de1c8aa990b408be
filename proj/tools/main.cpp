#include <iostream>

#include "fslgeom/cli.hpp"

int main(int argc, char** argv) {
    return fslgeom::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
