#include "logmoduli/cli.hpp"

int main(int argc, char** argv) { return logmoduli::cli_main(argc, argv); }
