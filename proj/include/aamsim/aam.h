#ifndef AAMSIM_AAM_H_
#define AAMSIM_AAM_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "aamsim/detector.h"
#include "aamsim/model.h"
#include "aamsim/rng.h"
#include "aamsim/time.h"

namespace aamsim {

// Cost-optimal skip length, sqrt(2 (beta/alpha) W (EX - W)) - W, rounded
// half-up and clamped to >= 1. Returns 1 when EX <= W. Neither the attack
// fraction nor the per-packet detector time is an input.
std::int64_t OptimalM(std::int64_t window, double beta_over_alpha, double ex);

// The unrounded, unclamped closed form. Requires ex > window.
double OptimalMContinuous(std::int64_t window, double beta_over_alpha,
                          double ex);

// The expected attack size is estimated by the forwarder's input-queue
// length at the moment of the alarm.
inline double EstimateEx(std::int64_t sqf_queue_len_at_alarm) {
  return static_cast<double>(sqf_queue_len_at_alarm);
}

enum class Disposition : std::uint8_t {
  kUndecided,  // only while a run is in progress
  kTestedForwarded,
  kForwarded,
  kDropped,
};

enum class AamMode : std::uint8_t { kMonitoring, kUnderAttack };

enum class AamEventKind : std::uint8_t {
  kWindowAttack,
  kWindowClear,
  kRecalcM,
  kDropRange,
  kForwardRange,
};

const char* EventName(AamEventKind kind);

// Sequence numbers in events are 1-based and inclusive, as in the algorithm
// listing; from_seq > to_seq denotes an empty range and is never logged.
struct AamEvent {
  Nanos time = 0;
  AamEventKind kind = AamEventKind::kWindowClear;
  std::int64_t from_seq = 0;
  std::int64_t to_seq = 0;
  std::int64_t m_value = 0;
};

struct MPolicy {
  enum class Mode : std::uint8_t { kFixed, kOptimal };
  enum class Cadence : std::uint8_t {
    kOnAlarm,      // refresh when an attack is first detected
    kEveryAttack,  // refresh on every ATTACK verdict
  };

  Mode mode = Mode::kFixed;
  std::int64_t fixed_m = 100;
  double beta_over_alpha = 0.05;
  // Expected attack size used for the initial m before any alarm.
  double prior_ex = 0.0;
  Cadence cadence = Cadence::kOnAlarm;

  static MPolicy Fixed(std::int64_t m);
  static MPolicy Optimal(double beta_over_alpha, double prior_ex = 0.0);
};

// What happens to the skipped packets j..i-1 when the window after them
// reports NO_ATTACK.
enum class SkippedOnClear : std::uint8_t {
  kDrop,     // the skip interval belongs to the dropped batch
  kForward,  // forwarded untested with the clear window
};

struct AamConfig {
  int window = 20;
  MPolicy m_policy;
  SkippedOnClear skipped_on_clear = SkippedOnClear::kDrop;

  void Validate() const;
};

struct AamCounters {
  std::int64_t windows_tested = 0;
  // Windows tested after an alarm, the terminal clear window included.
  std::int64_t windows_under_attack = 0;
  std::int64_t attack_verdicts = 0;
  std::int64_t alarms = 0;
  std::int64_t packets_dropped = 0;
  std::int64_t benign_dropped = 0;
  std::int64_t attack_dropped = 0;
  std::int64_t packets_forwarded = 0;
  std::int64_t packets_tested = 0;
};

// Cursors are 1-based like the algorithm listing.
struct AamState {
  std::int64_t i = 1;
  std::int64_t j = 1;
  std::int64_t m = 1;
  AamMode mode = AamMode::kMonitoring;
  AamCounters counters;
};

// Half-open, 0-based index range.
struct IndexRange {
  std::int64_t begin = 0;
  std::int64_t end = 0;

  std::int64_t size() const { return end > begin ? end - begin : 0; }
  bool empty() const { return size() == 0; }
};

// Outcome of one verdict for the packets it settles.
struct AamAction {
  Verdict verdict = Verdict::kNoAttack;
  IndexRange dropped;
  IndexRange forwarded_untested;
  IndexRange tested;
};

// The window-test / drop / skip state machine. The driver owns the packets:
// it asks for the next test window, obtains a verdict for it and reports it
// back. Dispositions of every settled packet are recorded here.
//
// Index updates per verdict, with 1-based cursors i (window start) and
// j (first unsettled packet):
//   ATTACK:    drop j..i+W-1, then j <- i+W, i <- i+W-1+m
//   NO_ATTACK: settle j..i+W-1, then j <- i+W, i <- i+W
class AamMachine {
 public:
  explicit AamMachine(const AamConfig& config);

  const AamConfig& config() const { return config_; }
  const AamState& state() const { return state_; }
  const std::vector<AamEvent>& events() const { return events_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  // 0-based index of the next window's first packet.
  std::int64_t next_window_begin() const { return state_.i - 1; }
  std::int64_t first_unsettled() const { return state_.j - 1; }

  // Applies the verdict for the window starting at next_window_begin() and
  // ending (exclusive, 0-based) at window_end; window_end is smaller than a
  // full window only for the trailing window of a stream. classes[k] is the
  // ground truth of packet k, for disposition accounting.
  // queue_estimate is the forwarder input-queue length at the verdict.
  AamAction Apply(Verdict verdict, std::int64_t window_end, Nanos now,
                  std::int64_t queue_estimate,
                  std::span<const PacketClass> classes);

  // Forwards every unsettled packet up to stream_end untested.
  AamAction Finish(std::int64_t stream_end, Nanos now,
                   std::span<const PacketClass> classes);

  // Dispositions of packets 0..size-1; kUndecided for unsettled ones.
  const std::vector<Disposition>& dispositions() const { return dispositions_; }

 private:
  void Settle(IndexRange range, Disposition d,
              std::span<const PacketClass> classes);
  void Log(Nanos now, AamEventKind kind, IndexRange range);
  void RefreshM(Nanos now, std::int64_t queue_estimate);

  AamConfig config_;
  AamState state_;
  std::vector<AamEvent> events_;
  std::vector<std::string> warnings_;
  std::vector<Disposition> dispositions_;
};

// A trailing window shorter than this many packets is forwarded untested.
inline std::int64_t MinTrailingWindow(int window) { return (window + 1) / 2; }

struct AamRun {
  std::vector<Disposition> dispositions;
  AamState state;
  std::vector<AamEvent> events;
  std::vector<std::string> warnings;
};

// Runs the machine over a complete, untimed stream. Each verdict is stamped
// with the arrival instant of its window's last packet; the queue estimate
// at that instant is the number of arrived, unsettled packets.
AamRun RunAam(std::span<const PacketRecord> stream,
              const DetectorModel& detector, const AamConfig& config,
              RngStream& rng);

// CSV: event_time_s,event,from_seq,to_seq,m_value
void WriteEventLogCsv(std::ostream& out, std::span<const AamEvent> events);

}  // namespace aamsim

#endif  // AAMSIM_AAM_H_
