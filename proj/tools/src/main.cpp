#include <iostream>
#include <string>
#include <vector>

#include "shiftfp_cli/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return shiftfp::cli::run_cli(args, std::cout, std::cerr);
}
