#include <iostream>

#include "ramanecho/cli.hpp"

int main(int argc, char** argv) { return ramanecho::cli::cli_main(argc, argv, std::cout, std::cerr); }
