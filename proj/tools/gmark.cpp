#include "gmark/cli.hpp"

int main(int argc, char** argv) { return gmark::cli::main_entry(argc, argv); }
