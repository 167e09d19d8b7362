#include "aamsim/traffic.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>

#include "aamsim/errors.h"

namespace aamsim {

void BenignSpec::Validate() const {
  if (!std::isfinite(period_s) || period_s <= 0) {
    throw ConfigError("benign period must be > 0");
  }
  if (!(jitter_fraction >= 0 && jitter_fraction < 1)) {
    throw ConfigError("benign jitter_fraction must lie in [0, 1)");
  }
  if (num_sources < 1) throw ConfigError("benign num_sources must be >= 1");
}

Nanos FloodSpec::start() const { return FromSeconds(start_s); }
Nanos FloodSpec::end() const { return FromSeconds(start_s + duration_s); }

void FloodSpec::Validate() const {
  if (!std::isfinite(start_s) || start_s < 0) {
    throw ConfigError("flood start must be >= 0");
  }
  if (!std::isfinite(duration_s) || duration_s <= 0) {
    throw ConfigError("flood duration must be > 0");
  }
  if (!std::isfinite(rate_pps) || rate_pps <= 0) {
    throw ConfigError("flood rate must be > 0");
  }
}

std::vector<PacketRecord> GenBenign(const BenignSpec& spec, double horizon_s,
                                    RngStream& rng) {
  spec.Validate();
  if (!std::isfinite(horizon_s) || horizon_s <= 0) {
    throw ConfigError("horizon must be > 0");
  }
  const Nanos period = FromSeconds(spec.period_s);
  const Nanos horizon = FromSeconds(horizon_s);
  if (period <= 0) throw ConfigError("benign period below 1 ns");

  std::vector<std::vector<PacketRecord>> per_source;
  per_source.reserve(spec.num_sources);
  for (int s = 0; s < spec.num_sources; ++s) {
    std::vector<PacketRecord> trace;
    for (Nanos base = 0; base < horizon; base += period) {
      Nanos t = base;
      if (spec.jitter_fraction > 0) {
        t += FromSeconds(rng.Uniform() * spec.jitter_fraction * spec.period_s);
      }
      if (t >= horizon) continue;
      trace.push_back({static_cast<std::int64_t>(trace.size()), t,
                       PacketClass::kBenign, spec.first_source_id + s});
    }
    per_source.push_back(std::move(trace));
  }
  return Merge(per_source);
}

std::vector<PacketRecord> GenFlood(const FloodSpec& spec, int source_id,
                                   RngStream& rng) {
  spec.Validate();
  std::vector<PacketRecord> trace;
  trace.reserve(static_cast<std::size_t>(
      std::min(spec.expected_count() * 1.05 + 64.0, 5e7)));
  const double end = spec.start_s + spec.duration_s;
  // Offsets accumulate in seconds and convert per packet, so a vanishing
  // rate never overflows the nanosecond range.
  double t = spec.start_s;
  while (true) {
    t += rng.Exponential(spec.rate_pps);
    if (t > end) break;
    trace.push_back({static_cast<std::int64_t>(trace.size()), FromSeconds(t),
                     PacketClass::kAttack, source_id});
  }
  return trace;
}

std::vector<PacketRecord> Merge(
    std::span<const std::vector<PacketRecord>> traces) {
  std::size_t total = 0;
  for (std::size_t k = 0; k < traces.size(); ++k) {
    const auto& trace = traces[k];
    for (std::size_t n = 1; n < trace.size(); ++n) {
      if (trace[n].arrival < trace[n - 1].arrival) {
        throw PreconditionError("merge input " + std::to_string(k) +
                                " is not sorted at position " +
                                std::to_string(n));
      }
    }
    total += trace.size();
  }

  struct Key {
    Nanos arrival;
    int source;
    std::int64_t seq;
    std::size_t input;
    std::size_t pos;
  };
  std::vector<Key> keys;
  keys.reserve(total);
  for (std::size_t k = 0; k < traces.size(); ++k) {
    for (std::size_t n = 0; n < traces[k].size(); ++n) {
      const PacketRecord& p = traces[k][n];
      keys.push_back({p.arrival, p.source_id, p.seq, k, n});
    }
  }
  std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    return std::tie(a.arrival, a.source, a.seq, a.input, a.pos) <
           std::tie(b.arrival, b.source, b.seq, b.input, b.pos);
  });

  std::vector<PacketRecord> merged;
  merged.reserve(total);
  for (const Key& key : keys) {
    PacketRecord p = traces[key.input][key.pos];
    p.seq = static_cast<std::int64_t>(merged.size());
    merged.push_back(p);
  }
  return merged;
}

void WriteTraceCsv(std::ostream& out, std::span<const PacketRecord> trace) {
  out << "seq,arrival_time_s,class,source_id\n";
  for (const PacketRecord& p : trace) {
    out << p.seq << ',' << FormatSeconds(p.arrival) << ',' << ClassCode(p.cls)
        << ',' << p.source_id << '\n';
  }
}

std::vector<PacketRecord> ReadTraceCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) ||
      line.rfind("seq,arrival_time_s,class,source_id", 0) != 0) {
    throw ConfigError("trace CSV: missing header");
  }
  std::vector<PacketRecord> trace;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string seq, time, cls, source;
    if (!std::getline(row, seq, ',') || !std::getline(row, time, ',') ||
        !std::getline(row, cls, ',') || !std::getline(row, source)) {
      throw ConfigError("trace CSV line " + std::to_string(line_no) +
                        ": expected 4 fields");
    }
    try {
      PacketRecord p;
      p.seq = std::stoll(seq);
      p.arrival = ParseSeconds(time);
      p.cls = ParseClassCode(cls);
      p.source_id = std::stoi(source);
      trace.push_back(p);
    } catch (const std::exception& e) {
      throw ConfigError("trace CSV line " + std::to_string(line_no) + ": " +
                        e.what());
    }
  }
  ValidateTrace(trace);
  return trace;
}

}  // namespace aamsim
