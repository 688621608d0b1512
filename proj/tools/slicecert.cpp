#include <iostream>

#include "slicecert/system_io.hpp"

int main(int argc, char** argv) { return slicecert::run_cli(argc, argv, std::cout, std::cerr); }
