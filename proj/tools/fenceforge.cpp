#include "fenceforge/cli.hpp"

int main(int argc, char** argv) { return fenceforge::cli_main(argc, argv); }
