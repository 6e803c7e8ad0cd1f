#include <iostream>

#include "grothsym/cli.hpp"

int main(int argc, char **argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return grothsym::cli::run(args, std::cout, std::cerr);
}
