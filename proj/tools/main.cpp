#include "commands.hpp"

int main(int argc, char** argv) { return limview::cli::run(argc, argv); }
