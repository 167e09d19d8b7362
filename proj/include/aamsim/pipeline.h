#ifndef AAMSIM_PIPELINE_H_
#define AAMSIM_PIPELINE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "aamsim/aam.h"
#include "aamsim/model.h"
#include "aamsim/occupancy.h"
#include "aamsim/scenario.h"
#include "aamsim/server.h"

namespace aamsim {

// Per-flood bookkeeping of an end-to-end run.
struct FloodOutcome {
  std::int64_t realized_x = 0;  // attack packets generated by the flood
  // Queue estimate and chosen m at the first alarm inside the flood window,
  // -1 when no alarm was raised during the flood.
  std::int64_t ex_estimate = -1;
  std::int64_t m_at_alarm = -1;
};

struct PipelineSummary {
  std::int64_t packets = 0;
  std::int64_t benign_packets = 0;
  std::int64_t attack_packets = 0;
  std::int64_t dropped = 0;
  std::int64_t benign_dropped = 0;
  std::int64_t attack_dropped = 0;
  std::int64_t forwarded = 0;   // passed the mitigation
  std::int64_t tested = 0;
  std::int64_t served_after_horizon = 0;
  std::int64_t windows_tested = 0;
  std::int64_t windows_under_attack = 0;
  std::int64_t attack_verdicts = 0;
  std::int64_t alarms = 0;
  std::int64_t sqf_peak_queue = 0;
  Nanos sqf_peak_time = 0;
  std::int64_t server_peak_queue = 0;
  double server_mean_queue = 0.0;
  Nanos server_max_wait = 0;
  double mean_service_s = 0.0;
  Nanos last_departure = 0;
  std::vector<FloodOutcome> floods;
};

struct PipelineResult {
  std::vector<PacketRecord> packets;
  std::vector<Disposition> dispositions;
  // Forwarder exit instant per packet (forward or drop time).
  std::vector<Nanos> sqf_exit;
  // Server records in service order.
  std::vector<ServerRecord> server;
  std::vector<QueueSample> sqf_timeline;
  std::vector<QueueSample> server_timeline;
  std::vector<AamEvent> events;
  std::vector<std::string> warnings;
  AamState aam_state;
  PipelineSummary summary;
};

// Generates the scenario's traffic and runs it through forwarder, detector
// and mitigation into the server. Deterministic in the scenario seed.
// Throws InvariantViolation if packet conservation fails.
PipelineResult RunPipeline(const Scenario& scenario);

// Traffic of the scenario alone (benign sources and floods, merged).
std::vector<PacketRecord> GenerateTraffic(const Scenario& scenario,
                                          std::vector<std::int64_t>* flood_counts = nullptr);

// Attack regime while any flood is active.
RegimeFn FloodRegime(const std::vector<FloodSpec>& floods);

}  // namespace aamsim

#endif  // AAMSIM_PIPELINE_H_
