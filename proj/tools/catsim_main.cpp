#include "catsim/cli.hpp"

int main(int argc, char** argv) { return catsim::cli_main(argc, argv); }
