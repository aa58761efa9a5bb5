#include <iostream>

#include "optoweak/app/cli.hpp"

int main(int argc, char** argv) { return optoweak::app::run(argc, argv, std::cout, std::cerr); }
