#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ffm::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitRefusal = 2;
inline constexpr int kExitUsage = 64;

// args excludes the program name. The JSON summary goes to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace ffm::cli
