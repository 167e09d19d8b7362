#ifndef AAMSIM_OCCUPANCY_H_
#define AAMSIM_OCCUPANCY_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "aamsim/time.h"

namespace aamsim {

struct QueueSample {
  Nanos time = 0;
  std::int64_t length = 0;

  friend bool operator==(const QueueSample&, const QueueSample&) = default;
};

// Occupancy of a buffer given each item's entry and exit instant. The count
// is right-continuous: an item entering and leaving at the same instant is
// never counted, and at a shared instant all exits and entries are applied
// before the count is read.
//
// entries[k] <= exits[k] is required for every k; neither list needs to be
// sorted.
class Occupancy {
 public:
  Occupancy(std::span<const Nanos> entries, std::span<const Nanos> exits);

  // Samples at 0, dt, 2dt, ... up to the first multiple of dt at or after
  // the last event, so the final sample of a finite run is always 0.
  std::vector<QueueSample> Sample(Nanos dt) const;

  std::int64_t Peak() const { return peak_; }
  Nanos PeakTime() const { return peak_time_; }
  // Time-average of the count over [first entry, last exit].
  double TimeAverage() const { return time_average_; }
  std::int64_t At(Nanos t) const;

 private:
  // Sorted distinct event instants and the count holding from each instant.
  std::vector<Nanos> times_;
  std::vector<std::int64_t> counts_;
  std::int64_t peak_ = 0;
  Nanos peak_time_ = 0;
  double time_average_ = 0.0;
};

// CSV: time_s,queue_len
void WriteTimelineCsv(std::ostream& out, std::span<const QueueSample> timeline);

}  // namespace aamsim

#endif  // AAMSIM_OCCUPANCY_H_
