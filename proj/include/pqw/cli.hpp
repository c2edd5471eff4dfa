#pragma once

#include <iosfwd>

namespace pqw {

/// Exit codes: 0 success, 1 the requested limit does not exist, 2 usage or parse error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace pqw
