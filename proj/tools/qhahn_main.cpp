#include "qhahn/cli.hpp"

int main(int argc, char** argv) { return qhahn::cli_main(argc, argv); }
