#pragma once

#include <iosfwd>

namespace sparsent::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntimeError = 1;
inline constexpr int kExitUsageError = 2;

// Runs one `sparsent <subcommand> ...` invocation. Data and reports go to
// `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sparsent::cli
