#include "qma/cli.hpp"

int main(int argc, char** argv) { return qma::cli::run(argc, argv); }
