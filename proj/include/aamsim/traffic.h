#ifndef AAMSIM_TRAFFIC_H_
#define AAMSIM_TRAFFIC_H_

#include <iosfwd>
#include <span>
#include <vector>

#include "aamsim/model.h"
#include "aamsim/rng.h"

namespace aamsim {

// Periodic legitimate senders. Source k emits at k-th multiples of period
// plus a uniform jitter drawn from [0, jitter_fraction * period).
struct BenignSpec {
  double period_s = 1.0;
  double jitter_fraction = 0.0;
  int num_sources = 1;
  int first_source_id = 1;

  void Validate() const;
};

// A Poisson flood over [start_s, start_s + duration_s].
struct FloodSpec {
  double start_s = 0.0;
  double duration_s = 60.0;
  double rate_pps = 6667.0;

  Nanos start() const;
  Nanos end() const;
  double expected_count() const { return duration_s * rate_pps; }
  void Validate() const;
};

std::vector<PacketRecord> GenBenign(const BenignSpec& spec, double horizon_s,
                                    RngStream& rng);

// Every packet gets class kAttack and the given source id. The length of the
// returned trace is the flood's realized packet count X.
std::vector<PacketRecord> GenFlood(const FloodSpec& spec, int source_id,
                                   RngStream& rng);

// Merges sorted traces into one, ordered by (arrival, source_id, input seq),
// and renumbers seq densely. Throws PreconditionError on unsorted input.
std::vector<PacketRecord> Merge(std::span<const std::vector<PacketRecord>> traces);

// CSV: seq,arrival_time_s,class,source_id with class in {B,A}.
void WriteTraceCsv(std::ostream& out, std::span<const PacketRecord> trace);
std::vector<PacketRecord> ReadTraceCsv(std::istream& in);

}  // namespace aamsim

#endif  // AAMSIM_TRAFFIC_H_
