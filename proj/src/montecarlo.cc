#include "aamsim/montecarlo.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>
#include <vector>

#include "aamsim/analysis.h"
#include "aamsim/errors.h"
#include "aamsim/pipeline.h"
#include "aamsim/rng.h"

namespace aamsim {

std::uint64_t RunSeed(std::uint64_t base_seed, int run) {
  return MixSeed(base_seed ^ (0xa0761d6478bd642fULL * static_cast<std::uint64_t>(run + 1)));
}

McResult MonteCarloCost(const Scenario& scenario, std::int64_t m, int runs,
                        std::uint64_t base_seed, unsigned threads) {
  if (runs < 1) throw PreconditionError("runs must be >= 1");
  if (m < 1) throw PreconditionError("m must be >= 1");

  Scenario base = scenario;
  base.aam_enabled = true;
  base.aam.m_policy = MPolicy::Fixed(m);
  base.Validate();

  McResult result;
  result.m = m;
  result.runs.resize(static_cast<std::size_t>(runs));

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    for (int r = next++; r < runs; r = next++) {
      try {
        Scenario s = base;
        s.seed = RunSeed(base_seed, r);
        const PipelineResult out = RunPipeline(s);
        McRun& run = result.runs[static_cast<std::size_t>(r)];
        run.m = m;
        run.run = r;
        run.seed = s.seed;
        run.benign_dropped = out.summary.benign_dropped;
        run.windows_tested = out.summary.windows_tested;
        run.windows_under_attack = out.summary.windows_under_attack;
        run.realized_cost =
            RealizedCost(s.cost, run.benign_dropped, run.windows_under_attack);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(runs));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  NeumaierSum sum;
  for (const McRun& run : result.runs) sum.Add(run.realized_cost);
  result.mean_cost = sum.value() / runs;
  if (runs > 1) {
    NeumaierSum sq;
    for (const McRun& run : result.runs) {
      const double d = run.realized_cost - result.mean_cost;
      sq.Add(d * d);
    }
    result.std_cost = std::sqrt(sq.value() / (runs - 1));
    // Normal approximation.
    result.ci95_half_width = 1.96 * result.std_cost / std::sqrt(runs);
  }
  return result;
}

void WriteMonteCarloCsv(std::ostream& out, std::span<const McResult> results) {
  out << "m,run,seed,realized_cost,benign_dropped,windows_tested\n";
  char buf[160];
  for (const McResult& res : results) {
    for (const McRun& run : res.runs) {
      std::snprintf(buf, sizeof(buf), "%lld,%d,%llu,%.9g,%lld,%lld\n",
                    static_cast<long long>(run.m), run.run,
                    static_cast<unsigned long long>(run.seed), run.realized_cost,
                    static_cast<long long>(run.benign_dropped),
                    static_cast<long long>(run.windows_tested));
      out << buf;
    }
  }
}

}  // namespace aamsim
