#include "aamsim/scenario.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "aamsim/errors.h"

namespace aamsim {
namespace {

std::string Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double ParseDouble(const std::string& v) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw ConfigError("expected a number, got '" + v + "'");
  }
  return out;
}

std::int64_t ParseInt(const std::string& v) {
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError("expected an integer, got '" + v + "'");
  }
  return out;
}

std::uint64_t ParseU64(const std::string& v) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError("expected an unsigned integer, got '" + v + "'");
  }
  return out;
}

bool ParseBool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("expected a boolean, got '" + v + "'");
}

int ParseSmallInt(const std::string& v) {
  const std::int64_t x = ParseInt(v);
  if (x < -1'000'000'000 || x > 1'000'000'000) {
    throw ConfigError("integer out of range: " + v);
  }
  return static_cast<int>(x);
}

using Setter = std::function<void(Scenario&, const std::string&)>;

const std::map<std::string, Setter>& Setters() {
  static const std::map<std::string, Setter> setters = {
      {"name", [](Scenario& s, const std::string& v) { s.name = v; }},
      {"seed", [](Scenario& s, const std::string& v) { s.seed = ParseU64(v); }},
      {"horizon_s",
       [](Scenario& s, const std::string& v) { s.horizon_s = ParseDouble(v); }},

      {"benign.enabled",
       [](Scenario& s, const std::string& v) { s.benign_enabled = ParseBool(v); }},
      {"benign.period_s",
       [](Scenario& s, const std::string& v) { s.benign.period_s = ParseDouble(v); }},
      {"benign.jitter_fraction",
       [](Scenario& s, const std::string& v) {
         s.benign.jitter_fraction = ParseDouble(v);
       }},
      {"benign.num_sources",
       [](Scenario& s, const std::string& v) {
         s.benign.num_sources = ParseSmallInt(v);
       }},

      {"service.mean_normal_ms",
       [](Scenario& s, const std::string& v) {
         s.service.mean_normal_s = ParseDouble(v) * 1e-3;
       }},
      {"service.var_normal_ms2",
       [](Scenario& s, const std::string& v) {
         s.service.var_normal_s2 = ParseDouble(v) * 1e-6;
       }},
      {"service.mean_attack_ms",
       [](Scenario& s, const std::string& v) {
         s.service.mean_attack_s = ParseDouble(v) * 1e-3;
       }},
      {"service.var_attack_ms2",
       [](Scenario& s, const std::string& v) {
         s.service.var_attack_s2 = ParseDouble(v) * 1e-6;
       }},
      {"service.outlier_prob",
       [](Scenario& s, const std::string& v) {
         s.service.outlier_prob = ParseDouble(v);
       }},
      {"service.outlier_scale",
       [](Scenario& s, const std::string& v) {
         s.service.outlier_scale = ParseDouble(v);
       }},
      {"service.ceiling_ms",
       [](Scenario& s, const std::string& v) {
         s.service.ceiling_s = ParseDouble(v) * 1e-3;
       }},
      {"service.shielded_by_sqf",
       [](Scenario& s, const std::string& v) {
         s.service_shielded_by_sqf = ParseBool(v);
       }},
      {"service.drain_slowdown_factor",
       [](Scenario& s, const std::string& v) {
         s.drain_slowdown_factor = ParseDouble(v);
       }},

      {"sqf.enabled",
       [](Scenario& s, const std::string& v) { s.sqf_enabled = ParseBool(v); }},
      {"sqf.D_ms",
       [](Scenario& s, const std::string& v) { s.sqf_gap_s = ParseDouble(v) * 1e-3; }},
      {"sqf.link_latency_ms",
       [](Scenario& s, const std::string& v) {
         s.link_latency_s = ParseDouble(v) * 1e-3;
       }},

      {"detector.tpr",
       [](Scenario& s, const std::string& v) { s.detector.tpr = ParseDouble(v); }},
      {"detector.tnr",
       [](Scenario& s, const std::string& v) { s.detector.tnr = ParseDouble(v); }},
      {"detector.W",
       [](Scenario& s, const std::string& v) {
         s.detector.window = ParseSmallInt(v);
       }},

      {"aam.enabled",
       [](Scenario& s, const std::string& v) { s.aam_enabled = ParseBool(v); }},
      {"aam.m_mode",
       [](Scenario& s, const std::string& v) {
         if (v == "fixed") {
           s.aam.m_policy.mode = MPolicy::Mode::kFixed;
         } else if (v == "optimal") {
           s.aam.m_policy.mode = MPolicy::Mode::kOptimal;
         } else {
           throw ConfigError("aam.m_mode must be 'fixed' or 'optimal'");
         }
       }},
      {"aam.m",
       [](Scenario& s, const std::string& v) { s.aam.m_policy.fixed_m = ParseInt(v); }},
      {"aam.prior_ex",
       [](Scenario& s, const std::string& v) {
         s.aam.m_policy.prior_ex = ParseDouble(v);
       }},
      {"aam.recalc",
       [](Scenario& s, const std::string& v) {
         if (v == "alarm") {
           s.aam.m_policy.cadence = MPolicy::Cadence::kOnAlarm;
         } else if (v == "every_attack") {
           s.aam.m_policy.cadence = MPolicy::Cadence::kEveryAttack;
         } else {
           throw ConfigError("aam.recalc must be 'alarm' or 'every_attack'");
         }
       }},
      {"aam.skipped_on_clear",
       [](Scenario& s, const std::string& v) {
         if (v == "drop") {
           s.aam.skipped_on_clear = SkippedOnClear::kDrop;
         } else if (v == "forward") {
           s.aam.skipped_on_clear = SkippedOnClear::kForward;
         } else {
           throw ConfigError("aam.skipped_on_clear must be 'drop' or 'forward'");
         }
       }},

      {"cost.alpha",
       [](Scenario& s, const std::string& v) { s.cost.alpha = ParseDouble(v); }},
      {"cost.beta",
       [](Scenario& s, const std::string& v) { s.cost.beta = ParseDouble(v); }},
      {"cost.f", [](Scenario& s, const std::string& v) { s.cost.f = ParseDouble(v); }},
      {"cost.tau_ms",
       [](Scenario& s, const std::string& v) { s.cost.tau_s = ParseDouble(v) * 1e-3; }},
      {"cost.EX", [](Scenario& s, const std::string& v) { s.cost.ex = ParseDouble(v); }},

      {"output.sample_dt_ms",
       [](Scenario& s, const std::string& v) {
         s.sample_dt_s = ParseDouble(v) * 1e-3;
       }},
  };
  return setters;
}

void SetFloodField(Scenario& s, std::size_t index, const std::string& field,
                   const std::string& v) {
  if (s.floods.size() <= index) s.floods.resize(index + 1);
  FloodSpec& f = s.floods[index];
  if (field == "start_s") {
    f.start_s = ParseDouble(v);
  } else if (field == "duration_s") {
    f.duration_s = ParseDouble(v);
  } else if (field == "rate_pps") {
    f.rate_pps = ParseDouble(v);
  } else {
    throw ConfigError("unknown flood field '" + field + "'");
  }
}

// Fields shared between components follow the detector window and the
// cost weights unless the file says otherwise.
void Reconcile(Scenario& s, bool tau_given) {
  s.aam.window = s.detector.window;
  s.cost.window = s.detector.window;
  s.aam.m_policy.beta_over_alpha = s.cost.alpha > 0 ? s.cost.beta / s.cost.alpha : 0;
  if (!tau_given) s.cost.tau_s = s.service.mean_normal_s;
}

}  // namespace

void Scenario::Validate() const {
  if (!std::isfinite(horizon_s) || horizon_s <= 0) {
    throw ConfigError("horizon_s must be > 0");
  }
  if (benign_enabled) benign.Validate();
  for (std::size_t k = 0; k < floods.size(); ++k) {
    floods[k].Validate();
    if (floods[k].start_s + floods[k].duration_s > horizon_s) {
      throw ConfigError("flood " + std::to_string(k) +
                        " ends after the horizon");
    }
  }
  service.Validate();
  if (!std::isfinite(drain_slowdown_factor) || drain_slowdown_factor < 1) {
    throw ConfigError("service.drain_slowdown_factor must be >= 1");
  }
  if (!std::isfinite(sqf_gap_s) || FromSeconds(sqf_gap_s) <= 0) {
    throw ConfigError("sqf.D_ms must be > 0");
  }
  if (!std::isfinite(link_latency_s) || link_latency_s < 0) {
    throw ConfigError("sqf.link_latency_ms must be >= 0");
  }
  detector.Validate();
  aam.Validate();
  if (aam.window != detector.window || cost.window != detector.window) {
    throw ConfigError("AAM, cost and detector windows disagree");
  }
  cost.Validate();
  if (!std::isfinite(sample_dt_s) || FromSeconds(sample_dt_s) <= 0) {
    throw ConfigError("output.sample_dt_ms must be > 0");
  }
}

Scenario ParseScenario(std::istream& in, std::string_view source) {
  Scenario s;
  std::set<std::string> seen;
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& msg) {
    throw ConfigError(std::string(source) + ":" + std::to_string(line_no) +
                      ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    const std::string text = Trim(line);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) fail("expected 'key = value'");
    const std::string key = Trim(std::string_view(text).substr(0, eq));
    const std::string value = Trim(std::string_view(text).substr(eq + 1));
    if (key.empty()) fail("empty key");
    if (value.empty()) fail("empty value for '" + key + "'");
    if (!seen.insert(key).second) fail("duplicate key '" + key + "'");
    try {
      if (key.rfind("flood.", 0) == 0) {
        const auto dot = key.find('.', 6);
        if (dot == std::string::npos) fail("malformed flood key '" + key + "'");
        const std::string index = key.substr(6, dot - 6);
        const std::int64_t k = ParseInt(index);
        if (k < 0 || k > 10'000) fail("flood index out of range");
        SetFloodField(s, static_cast<std::size_t>(k), key.substr(dot + 1), value);
        continue;
      }
      const auto& setters = Setters();
      const auto it = setters.find(key);
      if (it == setters.end()) fail("unknown key '" + key + "'");
      it->second(s, value);
    } catch (const ConfigError& e) {
      const std::string what = e.what();
      if (what.rfind(std::string(source) + ":", 0) == 0) throw;
      fail(what);
    }
  }
  // Every flood index up to the largest one must be present.
  for (std::size_t k = 0; k < s.floods.size(); ++k) {
    if (!seen.contains("flood." + std::to_string(k) + ".start_s") &&
        !seen.contains("flood." + std::to_string(k) + ".duration_s") &&
        !seen.contains("flood." + std::to_string(k) + ".rate_pps")) {
      throw ConfigError(std::string(source) + ": flood " + std::to_string(k) +
                        " missing (flood indices must be contiguous)");
    }
  }
  Reconcile(s, seen.contains("cost.tau_ms"));
  try {
    s.Validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string(source) + ": " + e.what());
  }
  return s;
}

Scenario LoadScenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file '" + path + "'");
  return ParseScenario(in, path);
}

std::string FormatScenario(const Scenario& s) {
  std::ostringstream out;
  auto num = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  auto flag = [](bool b) { return b ? "true" : "false"; };
  out << "name = " << s.name << '\n'
      << "seed = " << s.seed << '\n'
      << "horizon_s = " << num(s.horizon_s) << "\n\n"
      << "benign.enabled = " << flag(s.benign_enabled) << '\n'
      << "benign.period_s = " << num(s.benign.period_s) << '\n'
      << "benign.jitter_fraction = " << num(s.benign.jitter_fraction) << '\n'
      << "benign.num_sources = " << s.benign.num_sources << "\n\n";
  for (std::size_t k = 0; k < s.floods.size(); ++k) {
    out << "flood." << k << ".start_s = " << num(s.floods[k].start_s) << '\n'
        << "flood." << k << ".duration_s = " << num(s.floods[k].duration_s) << '\n'
        << "flood." << k << ".rate_pps = " << num(s.floods[k].rate_pps) << '\n';
  }
  out << '\n'
      << "service.mean_normal_ms = " << num(s.service.mean_normal_s * 1e3) << '\n'
      << "service.var_normal_ms2 = " << num(s.service.var_normal_s2 * 1e6) << '\n'
      << "service.mean_attack_ms = " << num(s.service.mean_attack_s * 1e3) << '\n'
      << "service.var_attack_ms2 = " << num(s.service.var_attack_s2 * 1e6) << '\n'
      << "service.outlier_prob = " << num(s.service.outlier_prob) << '\n'
      << "service.outlier_scale = " << num(s.service.outlier_scale) << '\n'
      << "service.ceiling_ms = " << num(s.service.ceiling_s * 1e3) << '\n'
      << "service.shielded_by_sqf = " << flag(s.service_shielded_by_sqf) << '\n'
      << "service.drain_slowdown_factor = " << num(s.drain_slowdown_factor) << "\n\n"
      << "sqf.enabled = " << flag(s.sqf_enabled) << '\n'
      << "sqf.D_ms = " << num(s.sqf_gap_s * 1e3) << '\n'
      << "sqf.link_latency_ms = " << num(s.link_latency_s * 1e3) << "\n\n"
      << "detector.tpr = " << num(s.detector.tpr) << '\n'
      << "detector.tnr = " << num(s.detector.tnr) << '\n'
      << "detector.W = " << s.detector.window << "\n\n"
      << "aam.enabled = " << flag(s.aam_enabled) << '\n'
      << "aam.m_mode = "
      << (s.aam.m_policy.mode == MPolicy::Mode::kOptimal ? "optimal" : "fixed") << '\n'
      << "aam.m = " << s.aam.m_policy.fixed_m << '\n'
      << "aam.prior_ex = " << num(s.aam.m_policy.prior_ex) << '\n'
      << "aam.recalc = "
      << (s.aam.m_policy.cadence == MPolicy::Cadence::kOnAlarm ? "alarm" : "every_attack")
      << '\n'
      << "aam.skipped_on_clear = "
      << (s.aam.skipped_on_clear == SkippedOnClear::kDrop ? "drop" : "forward") << "\n\n"
      << "cost.alpha = " << num(s.cost.alpha) << '\n'
      << "cost.beta = " << num(s.cost.beta) << '\n'
      << "cost.f = " << num(s.cost.f) << '\n'
      << "cost.tau_ms = " << num(s.cost.tau_s * 1e3) << '\n'
      << "cost.EX = " << num(s.cost.ex) << "\n\n"
      << "output.sample_dt_ms = " << num(s.sample_dt_s * 1e3) << '\n';
  return out.str();
}

}  // namespace aamsim
