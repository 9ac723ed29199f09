#include "datamata/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return datamata::run_cli(argc, argv, std::cout, std::cerr);
}
