#include <iostream>
#include <string>
#include <vector>

#include "nevsamp/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return nevsamp::cli_run(args, std::cout, std::cerr);
}
