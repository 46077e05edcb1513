#pragma once

#include <iosfwd>

namespace orbitavg {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitHypothesis = 2;
inline constexpr int kExitUsage = 64;

// orbitavg <classify|predict|verify|sweep|certify|plot> [options]
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace orbitavg
