#ifndef AAMSIM_SQF_H_
#define AAMSIM_SQF_H_

#include <optional>
#include <span>
#include <vector>

#include "aamsim/occupancy.h"
#include "aamsim/time.h"

namespace aamsim {

// Quasi-deterministic pacer: a packet released at r leaves at
// max(previous_departure + gap, r), and the first one leaves at r.
class QdtpPacer {
 public:
  explicit QdtpPacer(Nanos gap);

  Nanos gap() const { return gap_; }
  std::optional<Nanos> last_forward() const { return last_; }

  Nanos Forward(Nanos release);

 private:
  Nanos gap_;
  std::optional<Nanos> last_;
};

// Forwarding instants for a sorted arrival sequence. Empty in, empty out.
std::vector<Nanos> ForwardTimes(std::span<const Nanos> arrivals, Nanos gap);

// Shaping delays Q_n computed with their own Lindley-type recursion
// Q_{n+1} = max(0, Q_n + gap - (a_{n+1} - a_n)), Q_0 = 0. The result equals
// ForwardTimes(arrivals) - arrivals elementwise; this is checked before
// returning and InvariantViolation is thrown otherwise.
std::vector<Nanos> SqfDelays(std::span<const Nanos> arrivals, Nanos gap);

// Input-queue length of the forwarder (arrived but not yet forwarded).
// Throws PreconditionError unless both lists are sorted and equally long.
std::vector<QueueSample> SqfQueueTimeline(std::span<const Nanos> arrivals,
                                          std::span<const Nanos> forwards,
                                          Nanos sample_dt);

inline constexpr Nanos kDefaultSampleDt = 100 * kNanosPerMilli;

}  // namespace aamsim

#endif  // AAMSIM_SQF_H_
