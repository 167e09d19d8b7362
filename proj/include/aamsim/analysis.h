#ifndef AAMSIM_ANALYSIS_H_
#define AAMSIM_ANALYSIS_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace aamsim {

// Inputs of the mitigation cost model. alpha weighs reprocessing time of
// dropped benign packets, beta the detection overhead during an attack.
struct CostParams {
  double alpha = 1.0;
  double beta = 0.05;
  double f = 0.9;          // attack fraction of the traffic during an attack
  double tau_s = 3e-3;     // detector time per packet
  std::int64_t window = 20;
  double ex = 1e4;         // expected packets received during an attack

  double beta_over_alpha() const { return beta / alpha; }
  void Validate() const;
};

struct CostReport {
  double en = 0.0;         // expected windows after the first
  double e_omega_s = 0.0;  // expected detection overhead
  double e_delta = 0.0;    // expected dropped packets
  double e_k_s = 0.0;      // expected reprocessing time
  double total = 0.0;
  std::int64_t m_star = 0;
};

// N = ceil((X - W) / (m + W)) windows after the first; 0 when X <= W.
std::int64_t ExactWindows(std::int64_t x, std::int64_t window, std::int64_t m);

// E[N] ~ (EX - W) / (m + W) + 1/2; 0 when EX <= W.
double ExpectedWindows(double ex, std::int64_t window, double m);

// E[Omega] = tau W E[N].
double ExpectedOverhead(const CostParams& p, double m);

// E[delta] ~ EX + (m - W) / 2.
double ExpectedDrops(double ex, std::int64_t window, double m);

// delta = N (m + W) for a realized window count.
std::int64_t ExactDrops(std::int64_t n, std::int64_t window, std::int64_t m);

// E[K] ~ tau W [(1 - f) EX / W - 1/2 + m / (2W)], clamped at 0.
double ExpectedReprocessing(const CostParams& p, double m);

// C = alpha E[K] + beta E[Omega].
double TotalCost(const CostParams& p, double m);

CostReport EvaluateCost(const CostParams& p, double m);

struct SweepPoint {
  std::int64_t m = 0;
  CostReport report;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  std::int64_t argmin_m = 0;
  double min_cost = 0.0;
};

// Evaluates the cost model at every m. Throws PreconditionError on an empty
// list or m < 1. Ties resolve to the smallest m.
SweepResult SweepM(const CostParams& p, std::span<const std::int64_t> ms);

// Convenience for the dense integer range [lo, hi].
std::vector<std::int64_t> MRange(std::int64_t lo, std::int64_t hi);

// center * 2^k for k in [-octaves, octaves], rounded, clamped to >= 1 and
// deduplicated.
std::vector<std::int64_t> GeometricMGrid(std::int64_t center, int octaves);
// CSV: m,EN,EOmega_s,Edelta,EK_s,total_cost
void WriteSweepCsv(std::ostream& out, const SweepResult& sweep);

// Reprocessing time of a realized benign-drop count, tau W ceil(b / W).
double RealizedReprocessing(std::int64_t benign_dropped, std::int64_t window,
                            double tau_s);

// Realized cost of one attack episode.
double RealizedCost(const CostParams& p, std::int64_t benign_dropped,
                    std::int64_t windows_after_first);

// Neumaier compensated summation.
class NeumaierSum {
 public:
  void Add(double x);
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace aamsim

#endif  // AAMSIM_ANALYSIS_H_
