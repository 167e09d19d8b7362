// aamsim command line: simulate, sweep, result1, optimal-m.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "aamsim/aam.h"
#include "aamsim/analysis.h"
#include "aamsim/errors.h"
#include "aamsim/montecarlo.h"
#include "aamsim/pipeline.h"
#include "aamsim/report.h"
#include "aamsim/scenario.h"
#include "aamsim/time.h"

namespace {

using aamsim::Scenario;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInvariant = 3;

struct Common {
  std::string scenario_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  int runs = 30;
  std::vector<std::int64_t> ms;
  bool no_sqf = false;
  bool no_aam = false;
};

Scenario Load(const Common& c) {
  Scenario s = aamsim::LoadScenario(c.scenario_path);
  if (c.seed) s.seed = *c.seed;
  if (c.no_sqf) s.sqf_enabled = false;
  if (c.no_aam) s.aam_enabled = false;
  s.Validate();
  return s;
}

std::ofstream OpenOut(const std::filesystem::path& p) {
  std::ofstream f(p);
  if (!f) throw aamsim::ConfigError("cannot write " + p.string());
  return f;
}

int Simulate(const Common& c) {
  Scenario s = Load(c);
  if (!c.ms.empty()) {
    if (c.ms.size() != 1) throw aamsim::ConfigError("simulate takes a single --m");
    s.aam.m_policy = aamsim::MPolicy::Fixed(c.ms.front());
    s.Validate();
  }
  aamsim::PipelineResult r = aamsim::RunPipeline(s);
  if (c.out_dir.empty()) {
    aamsim::WriteSummary(std::cout, s, r);
  } else {
    aamsim::WriteRunOutputs(c.out_dir, s, r);
    std::cout << "wrote " << c.out_dir << "\n";
  }
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
  return kExitOk;
}

int Sweep(const Common& c) {
  Scenario s = Load(c);
  if (c.runs < 1) throw aamsim::ConfigError("--runs must be at least 1");
  const std::int64_t m_star =
      aamsim::OptimalM(s.cost.window, s.cost.beta_over_alpha(), s.cost.ex);
  const std::vector<std::int64_t> ms =
      c.ms.empty() ? aamsim::GeometricMGrid(m_star, 3) : c.ms;

  aamsim::SweepResult sweep = aamsim::SweepM(s.cost, ms);
  std::vector<aamsim::McResult> mc;
  if (!s.floods.empty()) {
    for (std::int64_t m : ms)
      mc.push_back(aamsim::MonteCarloCost(s, m, c.runs, s.seed));
  }

  if (!c.out_dir.empty()) {
    std::filesystem::create_directories(c.out_dir);
    std::filesystem::path dir(c.out_dir);
    auto f = OpenOut(dir / "sweep.csv");
    aamsim::WriteSweepCsv(f, sweep);
    if (!mc.empty()) {
      auto g = OpenOut(dir / "mc_runs.csv");
      aamsim::WriteMonteCarloCsv(g, mc);
    }
  }

  std::printf("m* = %lld  (W=%lld beta/alpha=%g EX=%g)\n",
              static_cast<long long>(m_star),
              static_cast<long long>(s.cost.window), s.cost.beta_over_alpha(),
              s.cost.ex);
  std::printf("%8s %14s %14s %14s %8s\n", "m", "model_cost", "mc_mean",
              "mc_ci95", "runs");
  for (std::size_t k = 0; k < ms.size(); ++k) {
    const double model = sweep.points[k].report.total;
    if (mc.empty()) {
      std::printf("%8lld %14.6f\n", static_cast<long long>(ms[k]), model);
    } else {
      std::printf("%8lld %14.6f %14.6f %14.6f %8d\n",
                  static_cast<long long>(ms[k]), model, mc[k].mean_cost,
                  mc[k].ci95_half_width, c.runs);
    }
  }
  std::printf("model argmin m = %lld\n", static_cast<long long>(sweep.argmin_m));
  if (!mc.empty()) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < mc.size(); ++k)
      if (mc[k].mean_cost < mc[best].mean_cost) best = k;
    std::printf("mc argmin m = %lld\n", static_cast<long long>(mc[best].m));
  }
  return kExitOk;
}

int Result1(const Common& c, std::vector<double> d_ms) {
  Scenario base = Load(c);
  if (d_ms.empty()) d_ms = {2.7, 3.2};
  if (!c.out_dir.empty()) std::filesystem::create_directories(c.out_dir);
  std::printf("%8s %14s %16s %16s %12s %10s\n", "D_ms", "max_wait_s",
              "mean_service_s", "mean_server_q", "server_peak", "sqf_peak");
  for (double d : d_ms) {
    Scenario s = base;
    s.sqf_enabled = true;
    s.sqf_gap_s = d * 1e-3;
    s.Validate();
    aamsim::PipelineResult r = aamsim::RunPipeline(s);
    const auto& m = r.summary;
    std::printf("%8.3f %14s %16.9f %16.3f %12lld %10lld\n", d,
                aamsim::FormatSeconds(m.server_max_wait).c_str(),
                m.mean_service_s, m.server_mean_queue,
                static_cast<long long>(m.server_peak_queue),
                static_cast<long long>(m.sqf_peak_queue));
    if (!c.out_dir.empty()) {
      char sub[32];
      std::snprintf(sub, sizeof sub, "D_%.3fms", d);
      aamsim::WriteRunOutputs(std::filesystem::path(c.out_dir) / sub, s, r);
    }
  }
  return kExitOk;
}

int OptimalTable(std::vector<std::int64_t> ws, std::vector<double> ratios,
                 std::vector<double> exs) {
  if (ws.empty()) ws = {8, 9, 10, 20};
  if (ratios.empty()) ratios = {0.01, 0.05, 0.2};
  if (exs.empty()) exs = {1e3, 1e4, 1e5};
  std::printf("%6s %10s %12s %14s %8s\n", "W", "beta/alpha", "EX", "m_cont", "m*");
  for (std::int64_t w : ws)
    for (double q : ratios)
      for (double ex : exs) {
        std::printf("%6lld %10g %12g %14.4f %8lld\n", static_cast<long long>(w),
                    q, ex, aamsim::OptimalMContinuous(w, q, ex),
                    static_cast<long long>(aamsim::OptimalM(w, q, ex)));
      }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flood-attack gateway protection simulator"};
  app.require_subcommand(1);
  Common c;

  auto add_common = [&c](CLI::App* sub, bool need_scenario) {
    auto* opt = sub->add_option("--scenario", c.scenario_path, "scenario file");
    if (need_scenario) opt->required();
    opt->check(CLI::ExistingFile);
    sub->add_option("--out", c.out_dir, "output directory");
    sub->add_option("--seed", c.seed, "override the scenario seed");
    sub->add_option("--runs", c.runs, "Monte-Carlo runs per m")->capture_default_str();
    sub->add_option("--m", c.ms, "skip length(s)")->delimiter(',');
    sub->add_flag("--no-sqf", c.no_sqf, "bypass the forwarder");
    sub->add_flag("--no-aam", c.no_aam, "disable mitigation");
  };

  auto* sim = app.add_subcommand("simulate", "run one scenario end to end");
  add_common(sim, true);
  auto* sweep = app.add_subcommand("sweep", "cost model and Monte-Carlo sweep over m");
  add_common(sweep, true);
  auto* r1 = app.add_subcommand("result1", "compare forwarder gaps D");
  add_common(r1, true);
  std::vector<double> d_ms;
  r1->add_option("--d-ms", d_ms, "gaps in milliseconds")->delimiter(',');
  auto* opt = app.add_subcommand("optimal-m", "print the optimal skip table");
  std::vector<std::int64_t> ws;
  std::vector<double> ratios, exs;
  opt->add_option("--W", ws, "window lengths")->delimiter(',');
  opt->add_option("--ratio", ratios, "beta/alpha values")->delimiter(',');
  opt->add_option("--ex", exs, "expected attack sizes")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*sim) return Simulate(c);
    if (*sweep) return Sweep(c);
    if (*r1) return Result1(c, d_ms);
    if (*opt) return OptimalTable(ws, ratios, exs);
  } catch (const aamsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const aamsim::PreconditionError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const aamsim::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
