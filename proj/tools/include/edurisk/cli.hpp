#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "edurisk/metrics.hpp"

namespace edurisk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

/// Runs one `edurisk` invocation. `args` excludes the program name. Payload
/// goes to `out`, diagnostics to `err`; a data file named `-` is read from
/// `in`.
int run(std::span<const std::string> args, std::istream& in, std::ostream& out, std::ostream& err);

/// Fixed-width table of gain, split info and gain ratio, six decimals,
/// "n/a" where the gain ratio is undefined.
std::string metrics_table(std::span<const AttributeScore> scores);

}  // namespace edurisk::cli
