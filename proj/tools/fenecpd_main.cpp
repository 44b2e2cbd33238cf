#include <iostream>

#include "fenecpd/app.hpp"

int main(int argc, char** argv) { return fenecpd::run_cli(argc, argv, std::cout, std::cerr); }
