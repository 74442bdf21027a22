#include "synbench/cli.hpp"

int main(int argc, char** argv) { return synbench::run_cli(argc, argv); }
