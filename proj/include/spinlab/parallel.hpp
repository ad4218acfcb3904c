#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace spinlab {

// Deterministic blocked reduction: the index range is cut into a fixed
// number of blocks independent of the thread count, each block is reduced
// serially, and the per-block partials are folded in block order. The
// result is therefore identical for any number of OpenMP threads.
inline constexpr int kReductionBlocks = 256;

template <typename T, typename BlockFn, typename FoldFn>
T blocked_reduce(uint64_t count, T init, BlockFn block_fn, FoldFn fold) {
  int nblocks = kReductionBlocks;
  if (count < uint64_t(nblocks)) nblocks = count > 0 ? int(count) : 1;
  std::vector<T> partial(nblocks, init);
#pragma omp parallel for schedule(static)
  for (int b = 0; b < nblocks; ++b) {
    uint64_t lo = count * uint64_t(b) / nblocks;
    uint64_t hi = count * uint64_t(b + 1) / nblocks;
    partial[b] = block_fn(lo, hi, init);
  }
  T acc = init;
  for (int b = 0; b < nblocks; ++b) acc = fold(acc, partial[b]);
  return acc;
}

inline double blocked_sum(uint64_t count, const std::function<double(uint64_t)>& term) {
  return blocked_reduce<double>(
      count, 0.0,
      [&](uint64_t lo, uint64_t hi, double acc) {
        for (uint64_t i = lo; i < hi; ++i) acc += term(i);
        return acc;
      },
      [](double a, double b) { return a + b; });
}

inline double blocked_max(uint64_t count, const std::function<double(uint64_t)>& term) {
  return blocked_reduce<double>(
      count, -1e300,
      [&](uint64_t lo, uint64_t hi, double acc) {
        for (uint64_t i = lo; i < hi; ++i) {
          double t = term(i);
          if (t > acc) acc = t;
        }
        return acc;
      },
      [](double a, double b) { return a > b ? a : b; });
}

}  // namespace spinlab
