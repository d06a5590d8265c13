#ifndef DENDROID_TOOLS_CLI_H_
#define DENDROID_TOOLS_CLI_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace dendroid::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

inline constexpr std::uint64_t kDefaultSeed = 20260101;

// Runs the command line `args` (args[0] is the program name), writing
// results to `out` (unless --out names a file) and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dendroid::cli

#endif  // DENDROID_TOOLS_CLI_H_
