#include "cli.hpp"

int main(int argc, char** argv) { return oqw::cli::run_main(argc, argv); }
