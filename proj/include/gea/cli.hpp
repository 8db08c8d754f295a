#pragma once

#include <string>
#include <vector>

namespace gea::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitInfeasible = 3;

// Full command driver; `args` excludes the program name. Exposed so tests
// can exercise the CLI in-process.
int run(const std::vector<std::string>& args);

}  // namespace gea::cli
