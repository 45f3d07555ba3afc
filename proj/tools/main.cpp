#include "qhc/cli.hpp"

int main(int argc, char** argv) { return qhc::cli::run(argc, argv); }
