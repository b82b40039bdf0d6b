#include <iostream>

#include "eombias/cli.hpp"

int main(int argc, char** argv)
{
    return eombias::cli::run(argc, argv, std::cout, std::cerr);
}
