#include <iostream>
#include <vector>

#include "ranklab/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ranklab::cli::run_cli(args, std::cout, std::cerr);
}
