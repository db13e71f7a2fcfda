#include <iostream>

#include "mwu/cli_app.hpp"

int main(int argc, char** argv) { return mwu::run_cli(argc, argv, std::cout); }
