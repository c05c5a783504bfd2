#include "triterp/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return triterp::cli::dispatch(argc, argv, std::cout, std::cerr);
}
