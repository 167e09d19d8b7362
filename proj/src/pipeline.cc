#include "aamsim/pipeline.h"

#include <algorithm>
#include <optional>
#include <string>
#include <utility>

#include "aamsim/detector.h"
#include "aamsim/errors.h"
#include "aamsim/sqf.h"
#include "aamsim/traffic.h"

namespace aamsim {
namespace {

// Stream ids of the independent random streams of one run.
constexpr std::uint64_t kBenignStream = 1;
constexpr std::uint64_t kServerStream = 2;
constexpr std::uint64_t kDetectorStream = 3;
constexpr std::uint64_t kFloodStreamBase = 100;

void CheckConservation(const PipelineResult& r) {
  std::int64_t reached_server = 0;
  for (std::size_t k = 0; k < r.packets.size(); ++k) {
    const Disposition d = r.dispositions[k];
    if (d == Disposition::kUndecided) {
      throw InvariantViolation("packet " + std::to_string(k) +
                               " left without a disposition");
    }
    if (r.sqf_exit[k] < r.packets[k].arrival) {
      throw InvariantViolation("packet " + std::to_string(k) +
                               " left the forwarder before arriving");
    }
    if (d != Disposition::kDropped) ++reached_server;
  }
  std::int64_t tested_and_dropped = 0;
  for (const ServerRecord& rec : r.server) {
    if (r.dispositions[static_cast<std::size_t>(rec.seq)] == Disposition::kDropped) {
      ++tested_and_dropped;
    }
  }
  if (reached_server + tested_and_dropped !=
      static_cast<std::int64_t>(r.server.size())) {
    throw InvariantViolation("server records do not match dispositions");
  }
}

}  // namespace

RegimeFn FloodRegime(const std::vector<FloodSpec>& floods) {
  std::vector<std::pair<Nanos, Nanos>> windows;
  windows.reserve(floods.size());
  for (const FloodSpec& f : floods) windows.emplace_back(f.start(), f.end());
  return [windows = std::move(windows)](Nanos t) {
    for (const auto& [begin, end] : windows) {
      if (t >= begin && t <= end) return Regime::kAttack;
    }
    return Regime::kNormal;
  };
}

std::vector<PacketRecord> GenerateTraffic(const Scenario& s,
                                          std::vector<std::int64_t>* flood_counts) {
  std::vector<std::vector<PacketRecord>> traces;
  if (s.benign_enabled) {
    RngStream rng(s.seed, kBenignStream);
    traces.push_back(GenBenign(s.benign, s.horizon_s, rng));
  }
  const int first_flood_source = s.benign.first_source_id + s.benign.num_sources;
  for (std::size_t k = 0; k < s.floods.size(); ++k) {
    RngStream rng(s.seed, kFloodStreamBase + k);
    traces.push_back(
        GenFlood(s.floods[k], first_flood_source + static_cast<int>(k), rng));
    if (flood_counts) {
      flood_counts->push_back(static_cast<std::int64_t>(traces.back().size()));
    }
  }
  return Merge(traces);
}

PipelineResult RunPipeline(const Scenario& s) {
  s.Validate();
  PipelineResult r;
  std::vector<std::int64_t> flood_counts;
  r.packets = GenerateTraffic(s, &flood_counts);
  const auto n = static_cast<std::int64_t>(r.packets.size());

  std::vector<Nanos> arrivals;
  std::vector<PacketClass> classes;
  arrivals.reserve(r.packets.size());
  classes.reserve(r.packets.size());
  for (const PacketRecord& p : r.packets) {
    arrivals.push_back(p.arrival);
    classes.push_back(p.cls);
  }
  r.sqf_exit.assign(r.packets.size(), -1);
  r.server.reserve(r.packets.size());

  RegimeFn regime;
  if (!(s.sqf_enabled && s.service_shielded_by_sqf)) regime = FloodRegime(s.floods);
  DetectionServer server(s.service, regime, RngStream(s.seed, kServerStream),
                         s.drain_slowdown_factor);
  std::optional<QdtpPacer> pacer;
  if (s.sqf_enabled) pacer.emplace(FromSeconds(s.sqf_gap_s));
  const Nanos latency = FromSeconds(s.link_latency_s);

  std::int64_t forwarded_total = 0;
  auto forward = [&](std::int64_t k, Nanos release) -> const ServerRecord& {
    const Nanos t = pacer ? pacer->Forward(release) : release;
    r.sqf_exit[static_cast<std::size_t>(k)] = t;
    ++forwarded_total;
    r.server.push_back(server.Admit(k, t + latency));
    return r.server.back();
  };

  r.summary.floods.resize(s.floods.size());
  for (std::size_t k = 0; k < s.floods.size(); ++k) {
    r.summary.floods[k].realized_x = flood_counts[k];
  }

  if (!s.aam_enabled) {
    for (std::int64_t k = 0; k < n; ++k) {
      forward(k, arrivals[static_cast<std::size_t>(k)]);
    }
    r.dispositions.assign(r.packets.size(), Disposition::kForwarded);
  } else {
    AamMachine machine(s.aam);
    RngStream detector_rng(s.seed, kDetectorStream);
    const std::int64_t w = s.aam.window;
    std::int64_t dropped_from_queue = 0;
    Nanos gate = 0;
    std::vector<Label> labels;
    labels.reserve(static_cast<std::size_t>(w));

    auto finish = [&]() {
      const std::int64_t from = machine.first_unsettled();
      for (std::int64_t k = std::max<std::int64_t>(from, 0); k < n; ++k) {
        forward(k, std::max(arrivals[static_cast<std::size_t>(k)], gate));
      }
      machine.Finish(n, std::max(gate, arrivals.empty() ? 0 : arrivals.back()),
                     classes);
    };

    while (true) {
      const std::int64_t b = machine.next_window_begin();
      const std::int64_t len = std::min(w, n - b);
      if (len <= 0 || (len < w && len < MinTrailingWindow(s.aam.window))) {
        finish();
        break;
      }
      labels.clear();
      Nanos verdict_time = gate;
      for (std::int64_t k = b; k < b + len; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        verdict_time = forward(k, std::max(arrivals[kk], gate)).departure;
        labels.push_back(ClassifyPacket(classes[kk], s.detector, detector_rng));
      }
      const Verdict verdict = len == w ? WindowDecision(labels, s.aam.window)
                                       : MajorityVerdict(labels);
      const auto arrived = static_cast<std::int64_t>(
          std::upper_bound(arrivals.begin(), arrivals.end(), verdict_time) -
          arrivals.begin());
      const std::int64_t queue = arrived - forwarded_total - dropped_from_queue;
      const std::int64_t alarms_before = machine.state().counters.alarms;

      const AamAction action =
          machine.Apply(verdict, b + len, verdict_time, queue, classes);

      for (std::int64_t k = action.dropped.begin; k < action.dropped.end; ++k) {
        auto& exit = r.sqf_exit[static_cast<std::size_t>(k)];
        if (exit < 0) {
          exit = verdict_time;
          ++dropped_from_queue;
        }
      }
      for (std::int64_t k = action.forwarded_untested.begin;
           k < action.forwarded_untested.end; ++k) {
        forward(k, verdict_time);
      }
      gate = verdict_time;

      if (machine.state().counters.alarms > alarms_before) {
        // Attribute the alarm to the latest flood already started that has
        // not been attributed one yet.
        for (std::size_t f = s.floods.size(); f-- > 0;) {
          if (s.floods[f].start() <= verdict_time) {
            FloodOutcome& out = r.summary.floods[f];
            if (out.m_at_alarm < 0) {
              out.ex_estimate = queue;
              out.m_at_alarm = machine.state().m;
            }
            break;
          }
        }
      }
      if (len < w) {
        finish();
        break;
      }
    }
    r.dispositions = machine.dispositions();
    r.dispositions.resize(r.packets.size(), Disposition::kUndecided);
    r.events = machine.events();
    r.warnings = machine.warnings();
    r.aam_state = machine.state();
  }

  CheckConservation(r);

  const Occupancy sqf_occ(arrivals, r.sqf_exit);
  const Occupancy server_occ = ServerOccupancy(r.server);
  const Nanos dt = FromSeconds(s.sample_dt_s);
  r.sqf_timeline = sqf_occ.Sample(dt);
  r.server_timeline = server_occ.Sample(dt);

  PipelineSummary& sum = r.summary;
  sum.packets = n;
  for (std::size_t k = 0; k < r.packets.size(); ++k) {
    const bool attack = classes[k] == PacketClass::kAttack;
    (attack ? sum.attack_packets : sum.benign_packets)++;
    switch (r.dispositions[k]) {
      case Disposition::kDropped:
        ++sum.dropped;
        (attack ? sum.attack_dropped : sum.benign_dropped)++;
        break;
      case Disposition::kTestedForwarded:
      case Disposition::kForwarded:
        ++sum.forwarded;
        break;
      case Disposition::kUndecided:
        break;
    }
  }
  const AamCounters& c = r.aam_state.counters;
  sum.tested = c.packets_tested;
  sum.windows_tested = c.windows_tested;
  sum.windows_under_attack = c.windows_under_attack;
  sum.attack_verdicts = c.attack_verdicts;
  sum.alarms = c.alarms;
  sum.sqf_peak_queue = sqf_occ.Peak();
  sum.sqf_peak_time = sqf_occ.PeakTime();
  sum.server_peak_queue = server_occ.Peak();
  sum.server_mean_queue = server_occ.TimeAverage();
  const Nanos horizon = FromSeconds(s.horizon_s);
  double service_total = 0.0;
  for (const ServerRecord& rec : r.server) {
    sum.server_max_wait = std::max(sum.server_max_wait, rec.wait);
    sum.last_departure = std::max(sum.last_departure, rec.departure);
    service_total += ToSeconds(rec.service);
    if (rec.departure > horizon) ++sum.served_after_horizon;
  }
  if (!r.server.empty()) {
    sum.mean_service_s = service_total / static_cast<double>(r.server.size());
  }
  return r;
}

}  // namespace aamsim
