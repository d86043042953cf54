#include "burnback/cli.hpp"

int main(int argc, char** argv) { return burnback::cli::main_entry(argc, argv); }
