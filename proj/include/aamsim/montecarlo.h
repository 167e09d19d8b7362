#ifndef AAMSIM_MONTECARLO_H_
#define AAMSIM_MONTECARLO_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "aamsim/scenario.h"

namespace aamsim {

struct McRun {
  std::int64_t m = 0;
  int run = 0;
  std::uint64_t seed = 0;
  double realized_cost = 0.0;
  std::int64_t benign_dropped = 0;
  std::int64_t windows_tested = 0;
  std::int64_t windows_under_attack = 0;
};

struct McResult {
  std::int64_t m = 0;
  double mean_cost = 0.0;
  double std_cost = 0.0;
  double ci95_half_width = 0.0;
  std::vector<McRun> runs;
};

// Seed of run r. Run seeds do not depend on m, so every m of a sweep sees
// the same traffic realizations.
std::uint64_t RunSeed(std::uint64_t base_seed, int run);

// Runs the scenario `runs` times with a fixed skip length m and prices each
// run with the scenario's cost weights. Runs execute on up to `threads`
// worker threads (0: hardware concurrency); aggregation is in run order.
McResult MonteCarloCost(const Scenario& scenario, std::int64_t m, int runs,
                        std::uint64_t base_seed, unsigned threads = 0);

// CSV: m,run,seed,realized_cost,benign_dropped,windows_tested
void WriteMonteCarloCsv(std::ostream& out, std::span<const McResult> results);

}  // namespace aamsim

#endif  // AAMSIM_MONTECARLO_H_
