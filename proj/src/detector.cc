#include "aamsim/detector.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "aamsim/errors.h"

namespace aamsim {

void DetectorModel::Validate() const {
  if (!(tpr >= 0 && tpr <= 1) || !(tnr >= 0 && tnr <= 1)) {
    throw ConfigError("detector tpr and tnr must lie in [0, 1]");
  }
  if (window < 1) throw ConfigError("detector window W must be >= 1");
}

Label ClassifyPacket(PacketClass truth, const DetectorModel& model,
                     RngStream& rng) {
  if (truth == PacketClass::kAttack) {
    return rng.Bernoulli(model.tpr) ? Label::kAttack : Label::kBenign;
  }
  return rng.Bernoulli(model.tnr) ? Label::kBenign : Label::kAttack;
}

Verdict MajorityVerdict(std::span<const Label> labels) {
  if (labels.empty()) throw PreconditionError("empty detection window");
  const auto attacks = std::count(labels.begin(), labels.end(), Label::kAttack);
  return 2 * static_cast<std::size_t>(attacks) > labels.size()
             ? Verdict::kAttack
             : Verdict::kNoAttack;
}

Verdict WindowDecision(std::span<const Label> labels, int window) {
  if (window < 1 || labels.size() != static_cast<std::size_t>(window)) {
    throw PreconditionError("window holds " + std::to_string(labels.size()) +
                            " labels, expected " + std::to_string(window));
  }
  return MajorityVerdict(labels);
}

}  // namespace aamsim
