#include "aamsim/aam.h"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "aamsim/errors.h"

namespace aamsim {

double OptimalMContinuous(std::int64_t window, double beta_over_alpha,
                          double ex) {
  const double w = static_cast<double>(window);
  return std::sqrt(2.0 * beta_over_alpha * w * (ex - w)) - w;
}

std::int64_t OptimalM(std::int64_t window, double beta_over_alpha, double ex) {
  if (window < 1) throw PreconditionError("window must be >= 1");
  if (!(beta_over_alpha > 0) || !std::isfinite(beta_over_alpha)) {
    throw PreconditionError("beta/alpha must be finite and > 0");
  }
  if (!(ex > static_cast<double>(window))) return 1;
  const double m = OptimalMContinuous(window, beta_over_alpha, ex);
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(m + 0.5)));
}

const char* EventName(AamEventKind kind) {
  switch (kind) {
    case AamEventKind::kWindowAttack: return "WINDOW_ATTACK";
    case AamEventKind::kWindowClear: return "WINDOW_CLEAR";
    case AamEventKind::kRecalcM: return "RECALC_M";
    case AamEventKind::kDropRange: return "DROP_RANGE";
    case AamEventKind::kForwardRange: return "FORWARD_RANGE";
  }
  return "UNKNOWN";
}

MPolicy MPolicy::Fixed(std::int64_t m) {
  MPolicy p;
  p.mode = Mode::kFixed;
  p.fixed_m = m;
  return p;
}

MPolicy MPolicy::Optimal(double beta_over_alpha, double prior_ex) {
  MPolicy p;
  p.mode = Mode::kOptimal;
  p.beta_over_alpha = beta_over_alpha;
  p.prior_ex = prior_ex;
  return p;
}

void AamConfig::Validate() const {
  if (window < 1) throw ConfigError("AAM window W must be >= 1");
  if (m_policy.mode == MPolicy::Mode::kFixed && m_policy.fixed_m < 1) {
    throw ConfigError("fixed m must be >= 1");
  }
  if (m_policy.mode == MPolicy::Mode::kOptimal &&
      (!(m_policy.beta_over_alpha > 0) ||
       !std::isfinite(m_policy.beta_over_alpha))) {
    throw ConfigError("beta/alpha must be > 0 for the optimal m policy");
  }
}

AamMachine::AamMachine(const AamConfig& config) : config_(config) {
  config_.Validate();
  if (config_.m_policy.mode == MPolicy::Mode::kFixed) {
    state_.m = config_.m_policy.fixed_m;
  } else {
    state_.m = OptimalM(config_.window, config_.m_policy.beta_over_alpha,
                        config_.m_policy.prior_ex);
  }
}

void AamMachine::Log(Nanos now, AamEventKind kind, IndexRange range) {
  events_.push_back({now, kind, range.begin + 1, range.end, state_.m});
}

void AamMachine::Settle(IndexRange range, Disposition d,
                        std::span<const PacketClass> classes) {
  AamCounters& c = state_.counters;
  for (std::int64_t k = range.begin; k < range.end; ++k) {
    auto& slot = dispositions_[static_cast<std::size_t>(k)];
    if (slot != Disposition::kUndecided) {
      throw InvariantViolation("packet " + std::to_string(k + 1) +
                               " settled twice");
    }
    slot = d;
    if (d == Disposition::kDropped) {
      ++c.packets_dropped;
      if (classes[static_cast<std::size_t>(k)] == PacketClass::kAttack) {
        ++c.attack_dropped;
      } else {
        ++c.benign_dropped;
      }
    } else {
      ++c.packets_forwarded;
    }
  }
}

void AamMachine::RefreshM(Nanos now, std::int64_t queue_estimate) {
  const double ex = EstimateEx(queue_estimate);
  if (!(ex > config_.window)) {
    warnings_.push_back("queue estimate " + std::to_string(queue_estimate) +
                        " <= W at t=" + FormatSeconds(now) + "; m set to 1");
  }
  state_.m = OptimalM(config_.window, config_.m_policy.beta_over_alpha, ex);
  const std::int64_t b = next_window_begin();
  Log(now, AamEventKind::kRecalcM, {b, b + config_.window});
}

AamAction AamMachine::Apply(Verdict verdict, std::int64_t window_end,
                            Nanos now, std::int64_t queue_estimate,
                            std::span<const PacketClass> classes) {
  const std::int64_t w = config_.window;
  const std::int64_t b = next_window_begin();
  if (window_end <= b || window_end > b + w) {
    throw PreconditionError("window end " + std::to_string(window_end) +
                            " outside the current window");
  }
  if (static_cast<std::int64_t>(classes.size()) < window_end) {
    throw PreconditionError("class list shorter than the window");
  }
  if (static_cast<std::int64_t>(dispositions_.size()) < window_end) {
    dispositions_.resize(static_cast<std::size_t>(window_end),
                         Disposition::kUndecided);
  }

  AamCounters& c = state_.counters;
  ++c.windows_tested;
  c.packets_tested += window_end - b;
  if (state_.mode == AamMode::kUnderAttack) ++c.windows_under_attack;

  AamAction action;
  action.verdict = verdict;
  action.tested = {b, window_end};
  const IndexRange window{b, window_end};

  if (verdict == Verdict::kAttack) {
    ++c.attack_verdicts;
    const bool alarm = state_.mode == AamMode::kMonitoring;
    if (alarm) ++c.alarms;
    Log(now, AamEventKind::kWindowAttack, window);
    if (config_.m_policy.mode == MPolicy::Mode::kOptimal &&
        (alarm || config_.m_policy.cadence == MPolicy::Cadence::kEveryAttack)) {
      RefreshM(now, queue_estimate);
    }
    action.dropped = {first_unsettled(), window_end};
    Settle(action.dropped, Disposition::kDropped, classes);
    Log(now, AamEventKind::kDropRange, action.dropped);
    state_.j = state_.i + w;
    state_.i = state_.i + w - 1 + state_.m;
    state_.mode = AamMode::kUnderAttack;
  } else {
    Log(now, AamEventKind::kWindowClear, window);
    const IndexRange skipped{first_unsettled(), b};
    if (!skipped.empty() &&
        config_.skipped_on_clear == SkippedOnClear::kDrop) {
      action.dropped = skipped;
      Settle(skipped, Disposition::kDropped, classes);
      Log(now, AamEventKind::kDropRange, skipped);
      Settle(window, Disposition::kTestedForwarded, classes);
      Log(now, AamEventKind::kForwardRange, window);
    } else {
      action.forwarded_untested = skipped;
      Settle(skipped, Disposition::kForwarded, classes);
      Settle(window, Disposition::kTestedForwarded, classes);
      Log(now, AamEventKind::kForwardRange, {skipped.begin, window_end});
    }
    state_.j = state_.i + w;
    state_.i = state_.i + w;
    state_.mode = AamMode::kMonitoring;
  }
  return action;
}

AamAction AamMachine::Finish(std::int64_t stream_end, Nanos now,
                             std::span<const PacketClass> classes) {
  if (static_cast<std::int64_t>(classes.size()) < stream_end) {
    throw PreconditionError("class list shorter than the stream");
  }
  if (static_cast<std::int64_t>(dispositions_.size()) < stream_end) {
    dispositions_.resize(static_cast<std::size_t>(stream_end),
                         Disposition::kUndecided);
  }
  AamAction action;
  action.forwarded_untested = {first_unsettled(), stream_end};
  if (!action.forwarded_untested.empty()) {
    Settle(action.forwarded_untested, Disposition::kForwarded, classes);
    Log(now, AamEventKind::kForwardRange, action.forwarded_untested);
    state_.j = stream_end + 1;
    state_.i = std::max(state_.i, state_.j);
  }
  return action;
}

AamRun RunAam(std::span<const PacketRecord> stream,
              const DetectorModel& detector, const AamConfig& config,
              RngStream& rng) {
  if (stream.empty()) throw PreconditionError("AAM stream is empty");
  ValidateTrace(stream);
  detector.Validate();

  const auto n = static_cast<std::int64_t>(stream.size());
  std::vector<PacketClass> classes;
  std::vector<Nanos> arrivals;
  classes.reserve(stream.size());
  arrivals.reserve(stream.size());
  for (const PacketRecord& p : stream) {
    classes.push_back(p.cls);
    arrivals.push_back(p.arrival);
  }

  AamMachine machine(config);
  const std::int64_t w = config.window;
  std::vector<Label> labels;
  while (true) {
    const std::int64_t b = machine.next_window_begin();
    const std::int64_t len = std::min(w, n - b);
    if (len <= 0 || (len < w && len < MinTrailingWindow(config.window))) {
      machine.Finish(n, arrivals.back(), classes);
      break;
    }
    labels.clear();
    for (std::int64_t k = b; k < b + len; ++k) {
      labels.push_back(
          ClassifyPacket(classes[static_cast<std::size_t>(k)], detector, rng));
    }
    const Verdict verdict = len == w ? WindowDecision(labels, config.window)
                                     : MajorityVerdict(labels);
    const Nanos now = arrivals[static_cast<std::size_t>(b + len - 1)];
    const auto arrived = static_cast<std::int64_t>(
        std::upper_bound(arrivals.begin(), arrivals.end(), now) -
        arrivals.begin());
    machine.Apply(verdict, b + len, now, arrived - machine.first_unsettled(),
                  classes);
    if (len < w) {
      machine.Finish(n, now, classes);
      break;
    }
  }

  AamRun run;
  run.dispositions = machine.dispositions();
  run.dispositions.resize(stream.size(), Disposition::kUndecided);
  run.state = machine.state();
  run.events = machine.events();
  run.warnings = machine.warnings();
  return run;
}

void WriteEventLogCsv(std::ostream& out, std::span<const AamEvent> events) {
  out << "event_time_s,event,from_seq,to_seq,m_value\n";
  for (const AamEvent& e : events) {
    out << FormatSeconds(e.time) << ',' << EventName(e.kind) << ','
        << e.from_seq << ',' << e.to_seq << ',' << e.m_value << '\n';
  }
}

}  // namespace aamsim
