#include "gllp/cli.hpp"

int main(int argc, char** argv) { return gllp::cli::run(argc, argv); }
