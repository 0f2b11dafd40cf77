#include "imtk/cli.hpp"

int main(int argc, char** argv) { return imtk::run_cli(argc, argv); }
