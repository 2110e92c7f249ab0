#include "cli.hpp"

int main(int argc, char** argv) { return frax::cli::main(argc, argv); }
