#include "gcjstyle/cli.hpp"

int main(int argc, char** argv) { return gcjstyle::cli::run_cli(argc, argv); }
