#include <iostream>
#include <string>
#include <vector>

#include "qsonify/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return qsonify::cli::run(args, std::cout, std::cerr);
}
