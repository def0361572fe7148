#include "ocse/cli.hpp"

int main(int argc, char** argv) { return ocse::cli_dispatch(argc, argv); }
