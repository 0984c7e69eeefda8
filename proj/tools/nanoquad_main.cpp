#include "nanoquad/cli.hpp"

int main(int argc, char** argv) { return nanoquad::run_cli(argc, argv); }
