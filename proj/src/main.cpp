#include <iostream>
#include <vector>

#include "diffiety/cli.hpp"

int main(int argc, char** argv) {
    return diffiety::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout,
                             std::cerr);
}
