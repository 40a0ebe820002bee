#include "lyclamp/cli.hpp"

int main(int argc, char** argv) { return lyclamp::cli::main(argc, argv); }
