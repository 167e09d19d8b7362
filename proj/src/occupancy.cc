#include "aamsim/occupancy.h"

#include <algorithm>
#include <ostream>
#include <string>
#include <utility>

#include "aamsim/errors.h"

namespace aamsim {

Occupancy::Occupancy(std::span<const Nanos> entries,
                     std::span<const Nanos> exits) {
  if (entries.size() != exits.size()) {
    throw PreconditionError("occupancy: entry/exit count mismatch");
  }
  std::vector<std::pair<Nanos, int>> events;
  events.reserve(2 * entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (exits[k] < entries[k]) {
      throw PreconditionError("occupancy: item " + std::to_string(k) +
                              " exits before it enters");
    }
    events.emplace_back(entries[k], +1);
    events.emplace_back(exits[k], -1);
  }
  std::sort(events.begin(), events.end());

  std::int64_t count = 0;
  for (std::size_t k = 0; k < events.size();) {
    const Nanos t = events[k].first;
    for (; k < events.size() && events[k].first == t; ++k) {
      count += events[k].second;
    }
    times_.push_back(t);
    counts_.push_back(count);
    if (count > peak_) {
      peak_ = count;
      peak_time_ = t;
    }
  }

  if (times_.size() >= 2) {
    double area = 0.0;
    for (std::size_t k = 0; k + 1 < times_.size(); ++k) {
      area += static_cast<double>(counts_[k]) *
              static_cast<double>(times_[k + 1] - times_[k]);
    }
    time_average_ = area / static_cast<double>(times_.back() - times_.front());
  }
}

std::int64_t Occupancy::At(Nanos t) const {
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  if (it == times_.begin()) return 0;
  return counts_[static_cast<std::size_t>(it - times_.begin()) - 1];
}

std::vector<QueueSample> Occupancy::Sample(Nanos dt) const {
  if (dt <= 0) throw PreconditionError("sample interval must be > 0");
  const Nanos last = times_.empty() ? 0 : std::max<Nanos>(0, times_.back());
  const Nanos samples = (last + dt - 1) / dt + 1;
  std::vector<QueueSample> out;
  out.reserve(static_cast<std::size_t>(samples));
  std::size_t next = 0;
  std::int64_t count = 0;
  for (Nanos k = 0; k < samples; ++k) {
    const Nanos t = k * dt;
    while (next < times_.size() && times_[next] <= t) count = counts_[next++];
    out.push_back({t, count});
  }
  return out;
}

void WriteTimelineCsv(std::ostream& out,
                      std::span<const QueueSample> timeline) {
  out << "time_s,queue_len\n";
  for (const QueueSample& s : timeline) {
    out << FormatSeconds(s.time) << ',' << s.length << '\n';
  }
}

}  // namespace aamsim
