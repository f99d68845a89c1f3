#include "gradmaze/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return gradmaze::cli::run(argc, argv, std::cout, std::cerr);
}
