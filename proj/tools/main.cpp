#include "skewdiff/cli.hpp"

int main(int argc, char** argv) { return skewdiff::cli::run_main(argc, argv); }
