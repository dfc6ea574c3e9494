#include "cssbp/cli.hpp"

int main(int argc, char** argv) { return cssbp::cli_main(argc, argv); }
