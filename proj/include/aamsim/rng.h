#ifndef AAMSIM_RNG_H_
#define AAMSIM_RNG_H_

#include <cstdint>
#include <random>

namespace aamsim {

// A seeded random stream. The engine (mt19937_64) and every sampler below are
// fully specified here rather than delegated to <random> distributions, whose
// algorithms differ between standard libraries; the same (seed, stream_id)
// therefore reproduces the same samples on any conforming platform.
//
// Single owner. Parallel work derives independent streams with distinct ids.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t NextU64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double Uniform();
  // Uniform on (0, 1].
  double UniformOpenLow();
  double StandardNormal();
  double Exponential(double rate);
  bool Bernoulli(double p) { return Uniform() < p; }

  // A new stream keyed by this stream's seed and a derived id.
  RngStream Fork(std::uint64_t child_id) const;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; used to derive engine seeds and per-run seeds.
std::uint64_t MixSeed(std::uint64_t x);

}  // namespace aamsim

#endif  // AAMSIM_RNG_H_
