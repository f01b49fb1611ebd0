#pragma once

#include <iosfwd>

namespace pspec {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Subcommands: lambda, verify-main, verify-evaluation, verify-lemmas,
/// anti-wilf, chi. Returns 0 when every assertion passes, 1 on failure (the
/// report is still written) and 2 on usage errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pspec
