#include <iostream>

#include "tvaffect/cli.hpp"

int main(int argc, char** argv) {
    return tvaffect::run_cli(argc, argv, std::cout, std::cerr);
}
