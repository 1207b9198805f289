#include "unitri/cli.hpp"

int main(int argc, char** argv) { return unitri::cli::dispatch(argc, argv); }
