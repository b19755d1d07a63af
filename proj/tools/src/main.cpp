#include "msym_cli/run.hpp"

int main(int argc, char** argv) { return msym::cli::main_entry(argc, argv); }
