#include "csf/cli.hpp"

int main(int argc, char** argv) { return csf::cli::main(argc, argv); }
