#include "famcorr/cli.hpp"

int main(int argc, char** argv) { return famcorr::run_cli(argc, argv); }
