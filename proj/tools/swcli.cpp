#include "sw/cli.hpp"

int main(int argc, char** argv) { return sw::run_cli(argc, argv); }
