#include "aamsim/model.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "aamsim/errors.h"

namespace aamsim {

char ClassCode(PacketClass c) { return c == PacketClass::kAttack ? 'A' : 'B'; }

PacketClass ParseClassCode(std::string_view code) {
  if (code == "A") return PacketClass::kAttack;
  if (code == "B") return PacketClass::kBenign;
  throw ConfigError("unknown packet class '" + std::string(code) + "'");
}

void ValidateTrace(std::span<const PacketRecord> trace) {
  Nanos previous = 0;
  for (std::size_t k = 0; k < trace.size(); ++k) {
    const PacketRecord& p = trace[k];
    if (p.seq != static_cast<std::int64_t>(k)) {
      throw PreconditionError("trace seq not dense at index " +
                              std::to_string(k));
    }
    if (p.arrival < 0) {
      throw PreconditionError("negative arrival at seq " + std::to_string(k));
    }
    if (k > 0 && p.arrival < previous) {
      throw PreconditionError("arrivals decrease at seq " + std::to_string(k));
    }
    previous = p.arrival;
  }
}

void ServiceTimeModel::Validate() const {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(mean_normal_s) || mean_normal_s <= 0 || !finite(mean_attack_s) ||
      mean_attack_s <= 0) {
    throw ConfigError("service means must be finite and > 0");
  }
  if (!finite(var_normal_s2) || var_normal_s2 < 0 || !finite(var_attack_s2) ||
      var_attack_s2 < 0) {
    throw ConfigError("service variances must be finite and >= 0");
  }
  if (!finite(outlier_prob) || outlier_prob < 0 || outlier_prob > 1) {
    throw ConfigError("outlier_prob must lie in [0, 1]");
  }
  if (!finite(outlier_scale) || outlier_scale < 1) {
    throw ConfigError("outlier_scale must be >= 1");
  }
  if (!finite(ceiling_s) || ceiling_s < 0) {
    throw ConfigError("service ceiling must be >= 0");
  }
}

Nanos SampleServiceTime(const ServiceTimeModel& model, Regime regime,
                        RngStream& rng) {
  model.Validate();
  const bool attack = regime == Regime::kAttack;
  const double mean = attack ? model.mean_attack_s : model.mean_normal_s;
  const double sd = std::sqrt(attack ? model.var_attack_s2 : model.var_normal_s2);
  const double floor = mean / 100.0;

  double draw = mean;
  if (sd > 0) {
    // floor < mean, so each attempt is accepted with probability > 1/2.
    do {
      draw = mean + sd * rng.StandardNormal();
    } while (draw <= floor);
  }
  if (attack && model.outlier_prob > 0 && rng.Bernoulli(model.outlier_prob)) {
    draw *= model.outlier_scale;
  }
  if (model.ceiling_s > 0) draw = std::min(draw, model.ceiling_s);
  return std::max<Nanos>(1, FromSeconds(draw));
}

}  // namespace aamsim
