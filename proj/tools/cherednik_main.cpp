#include "cherednik/cli.hpp"

int main(int argc, char** argv) { return cherednik::cli_main(argc, argv); }
