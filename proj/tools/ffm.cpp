#include "ffm/cli/run.hpp"

int main(int argc, char** argv) { return ffm::cli::run(argc, argv); }
