#ifndef AAMSIM_TIME_H_
#define AAMSIM_TIME_H_

#include <cstdint>
#include <string>
#include <string_view>

namespace aamsim {

// Simulation time and durations are integer nanoseconds. All recursions
// compare and add exact integers; conversion to and from decimal seconds
// happens only at I/O boundaries.
using Nanos = std::int64_t;

inline constexpr Nanos kNanosPerSecond = 1'000'000'000;
inline constexpr Nanos kNanosPerMilli = 1'000'000;

// Rounds to the nearest nanosecond. Throws ConfigError for non-finite input
// or values outside the representable range.
Nanos FromSeconds(double seconds);
Nanos FromMillis(double millis);

inline double ToSeconds(Nanos t) { return static_cast<double>(t) / 1e9; }
inline double ToMillis(Nanos t) { return static_cast<double>(t) / 1e6; }

// Exact decimal rendering with 9 fractional digits, e.g. "-1.000000005".
std::string FormatSeconds(Nanos t);

// Parses a decimal seconds literal ("12", "0.003", "1e-3") to nanoseconds.
Nanos ParseSeconds(std::string_view text);

}  // namespace aamsim

#endif  // AAMSIM_TIME_H_
