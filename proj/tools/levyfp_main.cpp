#include "levyfp/cli.hpp"

int main(int argc, char** argv) { return levyfp::cli::main_entry(argc, argv); }
