#include "mra/harness/cli.hpp"

int main(int argc, char** argv) { return mra::harness::run_cli(argc, argv); }
