#include "cli.hpp"

int main(int argc, char** argv) { return sphereqmc::cli::cli_main(argc, argv); }
