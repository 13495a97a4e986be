#include <iostream>

#include "fibgen/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return fibgen::cli::run(args, std::cout, std::cerr);
}
