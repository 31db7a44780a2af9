#include <iostream>

#include "ipset/cli.hpp"

int main(int argc, char** argv) { return ipset::cli_main(argc, argv, std::cout, std::cerr); }
