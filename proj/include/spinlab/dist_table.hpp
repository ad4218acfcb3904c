#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spinlab/errors.hpp"

namespace spinlab {

enum class DomainKind { vertices, oriented_edges, edges, custom_ids };

// Exact distribution over {0,1}^n indexed by bitmask.
struct DistTable {
  int n = 0;
  DomainKind kind = DomainKind::vertices;
  std::vector<double> probs;  // size 1<<n, normalized
  double log_z = 0.0;

  uint64_t size() const { return uint64_t(1) << n; }
  const std::vector<uint32_t>& support() const;
  double prob(uint32_t mask) const { return probs[mask]; }
  double min_support_prob() const;

  // conditional given coordinate i = value; throws EmptySupport if impossible
  DistTable conditioned(int i, int value) const;
  // conditional on an arbitrary predicate over masks
  DistTable conditioned_mask(uint32_t mask, uint32_t value) const;

  std::vector<double> marginals() const;  // P(bit i = 1)
  void normalize();                       // also rebuilds the support cache

 private:
  mutable std::vector<uint32_t> support_;
};

DistTable make_dist_from_log_weights(int n, DomainKind kind, std::vector<double> log_weights);

}  // namespace spinlab
