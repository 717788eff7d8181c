// dqw_main.cpp — `dqw` executable entry point

#include <iostream>

#include "dqw/cli.hpp"

int main(int argc, char** argv) { return dqw::cli::run(argc, argv, std::cout, std::cerr); }
