#include <iostream>

#include "lvdt/app.hpp"

int main(int argc, char** argv) { return lvdt::run_cli(argc, argv, std::cout, std::cerr); }
