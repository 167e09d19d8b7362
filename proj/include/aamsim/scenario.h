#ifndef AAMSIM_SCENARIO_H_
#define AAMSIM_SCENARIO_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "aamsim/aam.h"
#include "aamsim/analysis.h"
#include "aamsim/detector.h"
#include "aamsim/model.h"
#include "aamsim/traffic.h"

namespace aamsim {

// Everything one end-to-end run needs.
struct Scenario {
  std::string name = "scenario";
  std::uint64_t seed = 1;
  double horizon_s = 60.0;

  bool benign_enabled = true;
  BenignSpec benign;
  std::vector<FloodSpec> floods;

  ServiceTimeModel service;
  // With the forwarder in front, the server keeps its normal-load service
  // times for the whole run; otherwise the attack regime applies while any
  // flood is active.
  bool service_shielded_by_sqf = true;
  double drain_slowdown_factor = 1.0;

  bool sqf_enabled = true;
  double sqf_gap_s = 3e-3;
  double link_latency_s = 0.0;

  DetectorModel detector;

  bool aam_enabled = true;
  AamConfig aam{9, MPolicy{}, SkippedOnClear::kDrop};

  CostParams cost{1.0, 0.05, 0.9, 3e-3, 9, 1e4};
  double sample_dt_s = 0.1;

  // Throws ConfigError when any component or cross-field invariant fails.
  void Validate() const;
};

// Line-oriented "key = value" text; '#' starts a comment. Errors carry
// "<source>:<line>: <message>" and are thrown as ConfigError.
Scenario ParseScenario(std::istream& in, std::string_view source = "<input>");
Scenario LoadScenario(const std::string& path);

// Canonical text form. Parsing it back yields the same scenario up to the
// rounding of unit conversions; formatting is idempotent after one round.
std::string FormatScenario(const Scenario& s);

}  // namespace aamsim

#endif  // AAMSIM_SCENARIO_H_
