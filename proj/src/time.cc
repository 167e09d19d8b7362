#include "aamsim/time.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

#include "aamsim/errors.h"

namespace aamsim {
namespace {

constexpr double kMaxRepresentable = 9.0e18;

Nanos RoundToNanos(double nanos, const char* what) {
  if (!std::isfinite(nanos) || std::fabs(nanos) > kMaxRepresentable) {
    throw ConfigError(std::string(what) + " out of range");
  }
  return static_cast<Nanos>(std::llround(nanos));
}

}  // namespace

Nanos FromSeconds(double seconds) { return RoundToNanos(seconds * 1e9, "time"); }

Nanos FromMillis(double millis) { return RoundToNanos(millis * 1e6, "time"); }

std::string FormatSeconds(Nanos t) {
  const bool negative = t < 0;
  // Magnitude as unsigned so INT64_MIN is representable.
  const auto mag = negative ? static_cast<std::uint64_t>(0) - static_cast<std::uint64_t>(t)
                            : static_cast<std::uint64_t>(t);
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%s%llu.%09llu", negative ? "-" : "",
                static_cast<unsigned long long>(mag / kNanosPerSecond),
                static_cast<unsigned long long>(mag % kNanosPerSecond));
  return buf;
}

Nanos ParseSeconds(std::string_view text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ConfigError("invalid time value '" + std::string(text) + "'");
  }
  return FromSeconds(value);
}

}  // namespace aamsim
