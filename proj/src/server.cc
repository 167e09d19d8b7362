#include "aamsim/server.h"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "aamsim/errors.h"

namespace aamsim {

std::vector<Nanos> LindleyWaits(std::span<const Nanos> arrivals,
                                std::span<const Nanos> services) {
  if (arrivals.size() != services.size()) {
    throw PreconditionError("arrivals and services differ in length");
  }
  std::vector<Nanos> waits;
  waits.reserve(arrivals.size());
  for (std::size_t n = 0; n < arrivals.size(); ++n) {
    if (n == 0) {
      waits.push_back(0);
      continue;
    }
    const Nanos interarrival = arrivals[n] - arrivals[n - 1];
    if (interarrival < 0) {
      throw PreconditionError("arrivals not sorted at index " +
                              std::to_string(n));
    }
    waits.push_back(
        std::max<Nanos>(0, waits.back() + services[n - 1] - interarrival));
  }
  return waits;
}

DetectionServer::DetectionServer(const ServiceTimeModel& model,
                                 RegimeFn regime, RngStream rng,
                                 double drain_slowdown_factor)
    : model_(model),
      regime_(std::move(regime)),
      rng_(std::move(rng)),
      drain_slowdown_(drain_slowdown_factor) {
  model_.Validate();
  if (!std::isfinite(drain_slowdown_) || drain_slowdown_ < 1.0) {
    throw ConfigError("drain_slowdown_factor must be >= 1");
  }
}

ServerRecord DetectionServer::Admit(std::int64_t seq, Nanos arrival) {
  if (started_ && arrival < last_arrival_) {
    throw PreconditionError("server arrivals must be non-decreasing");
  }
  const Nanos start = started_ ? std::max(arrival, free_at_) : arrival;
  const Regime regime = regime_ ? regime_(start) : Regime::kNormal;
  Nanos service = SampleServiceTime(model_, regime, rng_);
  if (regime == Regime::kAttack) {
    attack_seen_ = true;
  } else if (attack_seen_ && start > arrival && drain_slowdown_ != 1.0) {
    service = std::max<Nanos>(
        1, static_cast<Nanos>(std::llround(static_cast<double>(service) *
                                           drain_slowdown_)));
  }
  started_ = true;
  last_arrival_ = arrival;
  free_at_ = start + service;
  return {seq, arrival, start - arrival, service, free_at_};
}

Occupancy ServerOccupancy(std::span<const ServerRecord> records) {
  std::vector<Nanos> entries, exits;
  entries.reserve(records.size());
  exits.reserve(records.size());
  for (const ServerRecord& r : records) {
    entries.push_back(r.arrival);
    exits.push_back(r.departure);
  }
  return Occupancy(entries, exits);
}

ServerTrace SimulateServer(std::span<const Nanos> arrivals,
                           const ServiceTimeModel& model,
                           const RegimeFn& regime, RngStream& rng,
                           const ServerOptions& options) {
  DetectionServer server(model, regime, rng, options.drain_slowdown_factor);
  ServerTrace trace;
  trace.records.reserve(arrivals.size());
  for (std::size_t n = 0; n < arrivals.size(); ++n) {
    trace.records.push_back(
        server.Admit(static_cast<std::int64_t>(n), arrivals[n]));
  }
  rng = server.rng();
  const Occupancy occupancy = ServerOccupancy(trace.records);
  trace.timeline = occupancy.Sample(options.sample_dt);
  trace.peak_queue = occupancy.Peak();
  trace.mean_queue = occupancy.TimeAverage();
  return trace;
}

void WriteServerTraceCsv(std::ostream& out,
                         std::span<const ServerRecord> records) {
  out << "seq,arrival_s,wait_s,service_s,departure_s\n";
  for (const ServerRecord& r : records) {
    out << r.seq << ',' << FormatSeconds(r.arrival) << ','
        << FormatSeconds(r.wait) << ',' << FormatSeconds(r.service) << ','
        << FormatSeconds(r.departure) << '\n';
  }
}

}  // namespace aamsim
