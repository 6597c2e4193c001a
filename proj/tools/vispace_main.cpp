#include "vispace/cli.hpp"

int main(int argc, char** argv) { return vispace::run_cli(argc, argv); }
