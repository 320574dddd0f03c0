#include "bandgas/cli.hpp"

int main(int argc, char** argv) { return bandgas::cli::run(argc, argv); }
