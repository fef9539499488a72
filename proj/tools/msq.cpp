#include "msq/cli.hpp"

auto main(int argc, char** argv) -> int { return msq::run_cli(argc, argv); }
