#include <iostream>
#include <string>
#include <vector>

#include "catenary/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return catenary::cli::run(args, std::cout, std::cerr);
}
