#include "wfc/cli.hpp"

int main(int argc, char** argv) { return wfc::run_cli(argc, argv); }
