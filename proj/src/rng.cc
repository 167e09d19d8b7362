#include "aamsim/rng.h"

#include <cmath>
#include <numbers>

namespace aamsim {

std::uint64_t MixSeed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed),
      stream_id_(stream_id),
      engine_(MixSeed(seed ^ MixSeed(stream_id + 0x5851f42d4c957f2dULL))) {}

double RngStream::Uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::UniformOpenLow() {
  return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
}

double RngStream::StandardNormal() {
  // Box-Muller; the second variate of the pair is discarded so that the
  // stream position depends only on the number of calls.
  const double u1 = UniformOpenLow();
  const double u2 = Uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

double RngStream::Exponential(double rate) {
  return -std::log(UniformOpenLow()) / rate;
}

RngStream RngStream::Fork(std::uint64_t child_id) const {
  return RngStream(seed_, MixSeed(stream_id_) ^ MixSeed(child_id + 1));
}

}  // namespace aamsim
