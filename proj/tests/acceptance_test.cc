// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails. A criterion number as the only
// argument runs just that one.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "aamsim/aam.h"
#include "aamsim/analysis.h"
#include "aamsim/montecarlo.h"
#include "aamsim/pipeline.h"
#include "aamsim/rng.h"
#include "aamsim/scenario.h"
#include "aamsim/server.h"
#include "aamsim/time.h"
#include "oracles.h"

using namespace aamsim;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

Scenario Load(const char* name) {
  return LoadScenario(std::string(AAMSIM_SCENARIO_DIR) + "/" + name + ".cfg");
}

std::string Fmt(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

using Clock = std::chrono::steady_clock;

double Since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// 1. D above the truncated service support gives zero waits; D below it
//    builds a queue.
Outcome ZeroWaitAboveCeiling() {
  const auto t0 = Clock::now();
  Scenario s = Load("result1");
  s.sqf_gap_s = 3.2e-3;
  const PipelineResult hi = RunPipeline(s);
  s.sqf_gap_s = 2.7e-3;
  const PipelineResult lo = RunPipeline(s);
  const double secs = Since(t0);
  const auto& a = hi.summary;
  const auto& b = lo.summary;
  const bool pass = a.packets >= 100'000 && a.server_max_wait == 0 &&
                    b.server_max_wait > 0 && b.server_mean_queue > 1.0 &&
                    secs < 10.0;
  return {pass, Fmt("packets=%lld; D=3.2ms max_wait=%s s; D=2.7ms max_wait=%s s "
                    "mean_queue=%.1f; %.2f s",
                    static_cast<long long>(a.packets),
                    FormatSeconds(a.server_max_wait).c_str(),
                    FormatSeconds(b.server_max_wait).c_str(), b.server_mean_queue,
                    secs)};
}

// 2. Lindley recursion against the event-driven FCFS simulator.
Outcome LindleyOracle() {
  RngStream rng(20'251'019, 2);
  int mismatches = 0;
  for (int inst = 0; inst < 1000; ++inst) {
    const int n = 1 + static_cast<int>(rng.NextU64() % 200);
    std::vector<Nanos> a, s;
    Nanos t = 0;
    for (int k = 0; k < n; ++k) {
      if (!rng.Bernoulli(0.2)) t += static_cast<Nanos>(rng.NextU64() % 6'000'000);
      a.push_back(t);
      s.push_back(1 + static_cast<Nanos>(rng.NextU64() % 5'000'000));
    }
    if (LindleyWaits(a, s) != oracle::EventDrivenWaits(a, s)) ++mismatches;
  }
  return {mismatches == 0, Fmt("%d of 1000 instances differ", mismatches)};
}

// 3. Window and drop counts of an aligned pure attack.
Outcome ExactCounting() {
  const std::int64_t x = 1000, w = 20, m = 100, n = 2000;
  std::vector<PacketRecord> stream;
  std::vector<bool> truth(n + 1, false);
  for (std::int64_t k = 0; k < n; ++k) {
    const bool attack = k < x;
    truth[static_cast<std::size_t>(k + 1)] = attack;
    stream.push_back({k, k * kNanosPerMilli,
                      attack ? PacketClass::kAttack : PacketClass::kBenign,
                      attack ? 9 : 1});
  }
  RngStream rng(1, 3);
  const AamRun run = RunAam(stream, DetectorModel{1.0, 1.0, static_cast<int>(w)},
                            {static_cast<int>(w), MPolicy::Fixed(m), SkippedOnClear::kDrop},
                            rng);
  const oracle::AamTrace ref = oracle::StepThroughAam(truth, n, w, m, true);
  const AamCounters& c = run.state.counters;
  bool same = true;
  for (std::int64_t k = 0; k < n; ++k) {
    const Disposition d = run.dispositions[static_cast<std::size_t>(k)];
    const oracle::Outcome o = ref.outcome[static_cast<std::size_t>(k + 1)];
    const bool match = (d == Disposition::kDropped) == (o == oracle::Outcome::kDropped) &&
                       (d == Disposition::kTestedForwarded) == (o == oracle::Outcome::kTested);
    same = same && match;
  }
  const std::int64_t big_n = ExactWindows(x, w, m);
  const std::int64_t delta = ExactDrops(big_n, w, m);
  const bool pass = same && c.windows_tested == ref.windows &&
                    1 + c.windows_under_attack == 10 &&
                    c.packets_dropped == ref.dropped &&
                    c.windows_under_attack == big_n &&
                    std::llabs(c.packets_dropped - delta) <= m + w;
  return {pass, Fmt("windows=%lld (oracle %lld), episode windows=%lld, after first=%lld vs N=%lld, "
                    "dropped=%lld (oracle %lld) vs N(m+W)=%lld",
                    static_cast<long long>(c.windows_tested),
                    static_cast<long long>(ref.windows),
                    static_cast<long long>(1 + c.windows_under_attack),
                    static_cast<long long>(c.windows_under_attack),
                    static_cast<long long>(big_n),
                    static_cast<long long>(c.packets_dropped),
                    static_cast<long long>(ref.dropped), static_cast<long long>(delta))};
}

// 4. Closed-form m* against a brute-force integer sweep.
Outcome ClosedFormVsBruteForce() {
  const auto t0 = Clock::now();
  int worst = 0, cases = 0;
  const auto ms = MRange(1, 20'000);
  for (std::int64_t w : {8, 9, 10, 20})
    for (double q : {0.01, 0.05, 0.2})
      for (double ex : {1e3, 1e4, 1e5}) {
        const CostParams p{1.0, q, 0.9, 3e-3, w, ex};
        const SweepResult s = SweepM(p, ms);
        worst = std::max(worst, static_cast<int>(std::llabs(s.argmin_m - OptimalM(w, q, ex))));
        ++cases;
      }
  const double secs = Since(t0);
  return {worst <= 2 && secs < 1.0,
          Fmt("%d cases, worst |argmin - m*| = %d; %.3f s", cases, worst, secs)};
}

// 5. Reported skip lengths of the two-flood experiment.
Outcome ReportedSkipLengths() {
  const std::int64_t a = OptimalM(20, 0.05, 10'805);
  const std::int64_t b = OptimalM(20, 0.05, 35'932);
  return {a == 127 && b == 248,
          Fmt("m*(10805)=%lld, m*(35932)=%lld", static_cast<long long>(a),
              static_cast<long long>(b))};
}

// 6. Monte-Carlo cost curve has its minimum at the predicted m*.
Outcome MonteCarloMinimum() {
  const auto t0 = Clock::now();
  const Scenario s = Load("cost_sweep");
  const std::int64_t m_star = OptimalM(s.cost.window, s.cost.beta_over_alpha(), s.cost.ex);
  const std::vector<std::int64_t> grid = GeometricMGrid(m_star, 3);
  std::vector<McResult> curve;
  for (std::int64_t m : grid) curve.push_back(MonteCarloCost(s, m, 30, s.seed));
  const double secs = Since(t0);
  std::size_t best = 0, at_star = 0;
  for (std::size_t k = 0; k < curve.size(); ++k) {
    if (curve[k].mean_cost < curve[best].mean_cost) best = k;
    if (grid[k] == m_star) at_star = k;
  }
  const bool interior = best > 0 && best + 1 < curve.size();
  const double rel = std::fabs(static_cast<double>(grid[best] - m_star)) /
                     static_cast<double>(m_star);
  const double excess = curve[at_star].mean_cost / curve[best].mean_cost - 1.0;
  std::string points;
  for (std::size_t k = 0; k < curve.size(); ++k)
    points += Fmt("%s%lld:%.3f", k ? " " : "", static_cast<long long>(grid[k]),
                  curve[k].mean_cost);
  return {interior && rel <= 0.25 && excess <= 0.10 && secs < 60.0,
          Fmt("m*=%lld, argmin=%lld, cost(m*)/min-1=%.3f [%s]; %.2f s",
              static_cast<long long>(m_star), static_cast<long long>(grid[best]), excess,
              points.c_str(), secs)};
}

// 7. First-order window-count approximation for Poisson attack sizes.
Outcome WindowApproximation() {
  std::mt19937_64 gen(77);
  std::poisson_distribution<std::int64_t> pois(1000.0);
  NeumaierSum sum;
  const int draws = 10'000;
  for (int k = 0; k < draws; ++k) sum.Add(static_cast<double>(ExactWindows(pois(gen), 20, 100)));
  const double mean = sum.value() / draws;
  const double formula = ExpectedWindows(1000, 20, 100);
  const double rel = std::fabs(mean - formula) / formula;
  return {rel <= 0.02, Fmt("mean N=%.4f, formula=%.4f, rel err=%.4f", mean, formula, rel)};
}

// 8. Congestion with and without the forwarder, and the forwarder's drain.
Outcome CongestionContrast() {
  const Scenario shaped = Load("flood_60s");
  Scenario raw = shaped;
  raw.sqf_enabled = false;
  const PipelineResult with = RunPipeline(shaped);
  const PipelineResult without = RunPipeline(raw);
  const double x = static_cast<double>(with.summary.floods.at(0).realized_x);

  // drain slope over the first stretch after the flood ends
  const Nanos end = shaped.floods[0].end();
  const auto& tl = with.sqf_timeline;
  auto at = [&tl](Nanos t) {
    auto it = std::upper_bound(tl.begin(), tl.end(), t,
                               [](Nanos v, const QueueSample& q) { return v < q.time; });
    return it == tl.begin() ? std::int64_t{0} : std::prev(it)->length;
  };
  const Nanos t1 = end + kNanosPerSecond;
  const Nanos t2 = t1 + 600 * kNanosPerSecond;
  const double slope = static_cast<double>(at(t1) - at(t2)) / ToSeconds(t2 - t1);
  const double target = 1.0 / shaped.sqf_gap_s;
  const bool drains = at(t2) > 0 && std::fabs(slope - target) <= 0.02 * target;

  const bool pass = static_cast<double>(without.summary.server_peak_queue) >= 0.9 * x &&
                    with.summary.server_peak_queue <= 10 &&
                    static_cast<double>(with.summary.sqf_peak_queue) >= 0.5 * x && drains;
  return {pass, Fmt("X=%.0f; no forwarder: server peak=%lld; forwarder: server peak=%lld, "
                    "forwarder peak=%lld, drain %.1f pkt/s vs 1/D=%.1f",
                    x, static_cast<long long>(without.summary.server_peak_queue),
                    static_cast<long long>(with.summary.server_peak_queue),
                    static_cast<long long>(with.summary.sqf_peak_queue), slope, target)};
}

// 9. A second, larger attack raises m and the server queue stays short.
Outcome TwoAttackResponse() {
  const PipelineResult r = RunPipeline(Load("dual_flood"));
  std::vector<std::int64_t> ms;
  for (const AamEvent& e : r.events)
    if (e.kind == AamEventKind::kRecalcM) ms.push_back(e.m_value);
  const bool grows = ms.size() >= 2 && ms[1] > ms[0];
  const bool short_queue = r.summary.server_peak_queue <= 25;
  std::string list;
  for (std::size_t k = 0; k < ms.size(); ++k)
    list += Fmt("%s%lld", k ? "," : "", static_cast<long long>(ms[k]));
  return {grows && short_queue,
          Fmt("RECALC_M m values [%s]; server peak=%lld", list.c_str(),
              static_cast<long long>(r.summary.server_peak_queue))};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"zero server wait when D exceeds the service ceiling", ZeroWaitAboveCeiling},
      {"lindley recursion matches event-driven FCFS", LindleyOracle},
      {"exact window and drop counting", ExactCounting},
      {"closed-form m* within 2 of brute force", ClosedFormVsBruteForce},
      {"m* of 127 and 248 for the two-flood sizes", ReportedSkipLengths},
      {"Monte-Carlo cost minimum near m*", MonteCarloMinimum},
      {"expected window count within 2%", WindowApproximation},
      {"congestion with and without the forwarder", CongestionContrast},
      {"second attack raises m, server queue stays short", TwoAttackResponse},
  };
  std::size_t first = 0, last = criteria.size();
  if (argc == 2) {
    const long pick = std::strtol(argv[1], nullptr, 10);
    if (pick < 1 || pick > static_cast<long>(criteria.size())) {
      std::fprintf(stderr, "criterion must be 1..%zu\n", criteria.size());
      return 2;
    }
    first = static_cast<std::size_t>(pick - 1);
    last = first + 1;
  }
  int failed = 0;
  for (std::size_t k = first; k < last; ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("criterion %zu: %s - %s: %s\n", k + 1, o.pass ? "PASS" : "FAIL",
                criteria[k].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu criteria, %d failed\n", last - first, failed);
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
