#include <ewald/cli.hpp>

int main(int argc, char** argv) { return ewald::cli_main(argc, argv); }
