#include "aamsim/analysis.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "aamsim/aam.h"
#include "aamsim/errors.h"

namespace aamsim {

void CostParams::Validate() const {
  if (!(alpha > 0) || !(beta > 0) || !std::isfinite(alpha) ||
      !std::isfinite(beta)) {
    throw ConfigError("cost weights alpha and beta must be > 0");
  }
  if (!(f > 0 && f <= 1)) throw ConfigError("attack fraction f must lie in (0, 1]");
  if (!(tau_s > 0) || !std::isfinite(tau_s)) {
    throw ConfigError("tau must be > 0");
  }
  if (window < 1) throw ConfigError("window W must be >= 1");
  if (!(ex >= 0) || !std::isfinite(ex)) throw ConfigError("EX must be >= 0");
}

std::int64_t ExactWindows(std::int64_t x, std::int64_t window, std::int64_t m) {
  if (window < 1 || m < 1) throw PreconditionError("W and m must be >= 1");
  if (x <= window) return 0;
  const std::int64_t span = m + window;
  return (x - window + span - 1) / span;
}

double ExpectedWindows(double ex, std::int64_t window, double m) {
  const double w = static_cast<double>(window);
  if (!(ex > w)) return 0.0;
  return (ex - w) / (m + w) + 0.5;
}

double ExpectedOverhead(const CostParams& p, double m) {
  return p.tau_s * static_cast<double>(p.window) *
         ExpectedWindows(p.ex, p.window, m);
}

double ExpectedDrops(double ex, std::int64_t window, double m) {
  return ex + 0.5 * (m - static_cast<double>(window));
}

std::int64_t ExactDrops(std::int64_t n, std::int64_t window, std::int64_t m) {
  return n * (m + window);
}

double ExpectedReprocessing(const CostParams& p, double m) {
  const double w = static_cast<double>(p.window);
  const double k = p.tau_s * w * ((1.0 - p.f) * p.ex / w - 0.5 + m / (2.0 * w));
  return std::max(0.0, k);
}

double TotalCost(const CostParams& p, double m) {
  return p.alpha * ExpectedReprocessing(p, m) + p.beta * ExpectedOverhead(p, m);
}

CostReport EvaluateCost(const CostParams& p, double m) {
  CostReport r;
  r.en = ExpectedWindows(p.ex, p.window, m);
  r.e_omega_s = ExpectedOverhead(p, m);
  r.e_delta = ExpectedDrops(p.ex, p.window, m);
  r.e_k_s = ExpectedReprocessing(p, m);
  r.total = p.alpha * r.e_k_s + p.beta * r.e_omega_s;
  r.m_star = OptimalM(p.window, p.beta_over_alpha(), p.ex);
  return r;
}

SweepResult SweepM(const CostParams& p, std::span<const std::int64_t> ms) {
  if (ms.empty()) throw PreconditionError("empty m range");
  p.Validate();
  SweepResult result;
  result.points.reserve(ms.size());
  for (std::int64_t m : ms) {
    if (m < 1) throw PreconditionError("m must be >= 1");
    SweepPoint point{m, EvaluateCost(p, static_cast<double>(m))};
    if (result.points.empty() || point.report.total < result.min_cost ||
        (point.report.total == result.min_cost && m < result.argmin_m)) {
      result.min_cost = point.report.total;
      result.argmin_m = m;
    }
    result.points.push_back(point);
  }
  return result;
}

std::vector<std::int64_t> MRange(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> ms;
  for (std::int64_t m = lo; m <= hi; ++m) ms.push_back(m);
  return ms;
}

std::vector<std::int64_t> GeometricMGrid(std::int64_t center, int octaves) {
  if (center < 1 || octaves < 0) {
    throw PreconditionError("grid needs center >= 1 and octaves >= 0");
  }
  std::vector<std::int64_t> ms;
  for (int k = -octaves; k <= octaves; ++k) {
    const auto m = std::max<std::int64_t>(
        1, std::llround(std::ldexp(static_cast<double>(center), k)));
    if (ms.empty() || ms.back() != m) ms.push_back(m);
  }
  return ms;
}

void WriteSweepCsv(std::ostream& out, const SweepResult& sweep) {
  out << "m,EN,EOmega_s,Edelta,EK_s,total_cost\n";
  char buf[256];
  for (const SweepPoint& pt : sweep.points) {
    const CostReport& r = pt.report;
    std::snprintf(buf, sizeof(buf), "%lld,%.9g,%.9f,%.9g,%.9f,%.9g\n",
                  static_cast<long long>(pt.m), r.en, r.e_omega_s, r.e_delta,
                  r.e_k_s, r.total);
    out << buf;
  }
}

double RealizedReprocessing(std::int64_t benign_dropped, std::int64_t window,
                            double tau_s) {
  if (benign_dropped <= 0) return 0.0;
  const std::int64_t blocks = (benign_dropped + window - 1) / window;
  return tau_s * static_cast<double>(window) * static_cast<double>(blocks);
}

double RealizedCost(const CostParams& p, std::int64_t benign_dropped,
                    std::int64_t windows_after_first) {
  const double omega = static_cast<double>(windows_after_first) * p.tau_s *
                       static_cast<double>(p.window);
  return p.alpha * RealizedReprocessing(benign_dropped, p.window, p.tau_s) +
         p.beta * omega;
}

void NeumaierSum::Add(double x) {
  const double t = sum_ + x;
  if (std::fabs(sum_) >= std::fabs(x)) {
    compensation_ += (sum_ - t) + x;
  } else {
    compensation_ += (x - t) + sum_;
  }
  sum_ = t;
}

}  // namespace aamsim
