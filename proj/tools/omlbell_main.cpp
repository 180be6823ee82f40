#include <iostream>

#include "omlbell/io.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return omlbell::run_cli(args, std::cout, std::cerr);
}
