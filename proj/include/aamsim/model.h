#ifndef AAMSIM_MODEL_H_
#define AAMSIM_MODEL_H_

#include <cstdint>
#include <span>
#include <string_view>

#include "aamsim/rng.h"
#include "aamsim/time.h"

namespace aamsim {

enum class PacketClass : std::uint8_t { kBenign, kAttack };

// Load condition at the detection server when a packet's service starts.
enum class Regime : std::uint8_t { kNormal, kAttack };

char ClassCode(PacketClass c);  // 'B' or 'A'
PacketClass ParseClassCode(std::string_view code);

// One packet of a trace. Interarrival gaps are derived from consecutive
// arrival instants and never stored.
struct PacketRecord {
  std::int64_t seq = 0;
  Nanos arrival = 0;
  PacketClass cls = PacketClass::kBenign;
  int source_id = 0;

  friend bool operator==(const PacketRecord&, const PacketRecord&) = default;
};

// Checks dense seq numbering, finite non-negative and non-decreasing
// arrivals. Throws PreconditionError naming the first offending record.
void ValidateTrace(std::span<const PacketRecord> trace);

// Per-packet processing time of the detector, in two load regimes.
//
// Each regime draws from a Gaussian with the given mean and variance,
// rejected below mean/100 so every draw is strictly positive. Under the
// attack regime a draw is multiplied by outlier_scale with probability
// outlier_prob. A positive ceiling_s clamps every final draw from above,
// which gives a service-time distribution with bounded support.
struct ServiceTimeModel {
  double mean_normal_s = 2.98e-3;
  double var_normal_s2 = 0.0055e-6;
  double mean_attack_s = 4.82e-3;
  double var_attack_s2 = 0.51e-6;
  double outlier_prob = 1e-3;
  double outlier_scale = 1e3;
  double ceiling_s = 0.0;  // 0 disables the ceiling

  // Mean detector time per packet under normal load.
  double tau_s() const { return mean_normal_s; }

  // Throws ConfigError on any invalid field.
  void Validate() const;
};

Nanos SampleServiceTime(const ServiceTimeModel& model, Regime regime,
                        RngStream& rng);

}  // namespace aamsim

#endif  // AAMSIM_MODEL_H_
