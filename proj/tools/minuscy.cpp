#include <iostream>

#include "minuscy/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return minuscy::run_cli(args, std::cout, std::cerr);
}
