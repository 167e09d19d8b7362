#include "aamsim/sqf.h"

#include <algorithm>
#include <string>

#include "aamsim/errors.h"

namespace aamsim {
namespace {

void RequireSorted(std::span<const Nanos> xs, const char* what) {
  for (std::size_t k = 1; k < xs.size(); ++k) {
    if (xs[k] < xs[k - 1]) {
      throw PreconditionError(std::string(what) + " not sorted at index " +
                              std::to_string(k));
    }
  }
}

}  // namespace

QdtpPacer::QdtpPacer(Nanos gap) : gap_(gap) {
  if (gap <= 0) throw ConfigError("pacing gap D must be > 0");
}

Nanos QdtpPacer::Forward(Nanos release) {
  const Nanos t = last_ ? std::max(*last_ + gap_, release) : release;
  last_ = t;
  return t;
}

std::vector<Nanos> ForwardTimes(std::span<const Nanos> arrivals, Nanos gap) {
  RequireSorted(arrivals, "arrivals");
  QdtpPacer pacer(gap);
  std::vector<Nanos> out;
  out.reserve(arrivals.size());
  for (Nanos a : arrivals) out.push_back(pacer.Forward(a));
  return out;
}

std::vector<Nanos> SqfDelays(std::span<const Nanos> arrivals, Nanos gap) {
  RequireSorted(arrivals, "arrivals");
  if (gap <= 0) throw ConfigError("pacing gap D must be > 0");
  std::vector<Nanos> delays;
  delays.reserve(arrivals.size());
  for (std::size_t n = 0; n < arrivals.size(); ++n) {
    if (n == 0) {
      delays.push_back(0);
    } else {
      const Nanos interarrival = arrivals[n] - arrivals[n - 1];
      delays.push_back(std::max<Nanos>(0, delays.back() + gap - interarrival));
    }
  }
  const std::vector<Nanos> forwards = ForwardTimes(arrivals, gap);
  for (std::size_t n = 0; n < arrivals.size(); ++n) {
    if (delays[n] != forwards[n] - arrivals[n]) {
      throw InvariantViolation("shaping delay disagrees with t_n - a_n at " +
                               std::to_string(n));
    }
  }
  return delays;
}

std::vector<QueueSample> SqfQueueTimeline(std::span<const Nanos> arrivals,
                                          std::span<const Nanos> forwards,
                                          Nanos sample_dt) {
  if (arrivals.size() != forwards.size()) {
    throw PreconditionError("arrivals and forwards differ in length");
  }
  RequireSorted(arrivals, "arrivals");
  RequireSorted(forwards, "forwards");
  return Occupancy(arrivals, forwards).Sample(sample_dt);
}

}  // namespace aamsim
