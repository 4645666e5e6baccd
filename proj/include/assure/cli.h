#pragma once

#include <iosfwd>

namespace assure::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitIo = 2;

// Entry point of the `assure` tool. Subcommands: evaluate, sweep, score,
// lifecycle, classify, assess.
int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace assure::cli
