#include "bpbs/cli.hpp"

int main(int argc, char** argv) { return bpbs::run_cli(argc, argv); }
