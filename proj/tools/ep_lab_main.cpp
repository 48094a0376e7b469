#include "eplab/cli.hpp"

int main(int argc, char** argv) { return eplab::run_cli(argc, argv); }
