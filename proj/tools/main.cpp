#include "nerve/cli.hpp"

int main(int argc, char** argv) { return nerve::cli::run(argc, argv); }
