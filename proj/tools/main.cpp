#include "becspec/cli.hpp"

int main(int argc, char** argv) { return becspec::cli::main_entry(argc, argv); }
