#ifndef AAMSIM_DETECTOR_H_
#define AAMSIM_DETECTOR_H_

#include <span>

#include "aamsim/model.h"
#include "aamsim/rng.h"

namespace aamsim {

enum class Label : std::uint8_t { kBenign, kAttack };
enum class Verdict : std::uint8_t { kNoAttack, kAttack };

// Per-packet error model of the attack detector plus its window length.
// Errors are independent Bernoulli draws.
struct DetectorModel {
  double tpr = 0.9973;  // P(label Attack | class Attack)
  double tnr = 0.9848;  // P(label Benign | class Benign)
  int window = 9;

  void Validate() const;
};

Label ClassifyPacket(PacketClass truth, const DetectorModel& model,
                     RngStream& rng);

// Strict majority: ATTACK iff more than half the labels are Attack. A tie
// is NO_ATTACK. Throws PreconditionError unless labels.size() == window.
Verdict WindowDecision(std::span<const Label> labels, int window);

// Same rule over any non-empty label set; used for short trailing windows.
Verdict MajorityVerdict(std::span<const Label> labels);

}  // namespace aamsim

#endif  // AAMSIM_DETECTOR_H_
