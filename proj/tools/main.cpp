#include "cli.hpp"

int main(int argc, char** argv) { return jordan::cli::run(argc, argv); }
