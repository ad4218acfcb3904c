#pragma once

#include <cstdint>

namespace spinlab {

// SplitMix64 run in counter mode. Every draw is a pure function of
// (key, counter), and the key is derived from (seed, step, phase), so
// substreams never desynchronize across implementations or platforms.
class Rng {
 public:
  explicit Rng(uint64_t seed) : key_(mix(seed)) {}
  Rng(uint64_t seed, uint64_t step, uint64_t phase)
      : key_(mix(mix(mix(seed) ^ step) ^ phase)) {}

  static uint64_t mix(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  uint64_t next_u64() { return mix(key_ + (++counter_) * 0x9e3779b97f4a7c15ULL); }

  // uniform in [0,1), 53-bit resolution
  double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

  // uniform in {0,...,n-1}
  uint64_t next_below(uint64_t n) {
    return uint64_t((static_cast<__uint128_t>(next_u64()) * n) >> 64);
  }

  bool bernoulli(double p) { return next_double() < p; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

 private:
  uint64_t key_;
  uint64_t counter_ = 0;
};

}  // namespace spinlab
