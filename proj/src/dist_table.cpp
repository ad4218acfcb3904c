#include "spinlab/dist_table.hpp"

#include <cmath>
#include <limits>

#include "spinlab/parallel.hpp"

namespace spinlab {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

const std::vector<uint32_t>& DistTable::support() const {
  if (support_.empty()) {
    for (uint64_t s = 0; s < size(); ++s)
      if (probs[s] > 0) support_.push_back(uint32_t(s));
  }
  return support_;
}

double DistTable::min_support_prob() const {
  double m = 1.0;
  for (uint32_t s : support()) m = std::min(m, probs[s]);
  return m;
}

DistTable DistTable::conditioned(int i, int value) const {
  return conditioned_mask(1u << i, value ? (1u << i) : 0u);
}

DistTable DistTable::conditioned_mask(uint32_t mask, uint32_t value) const {
  DistTable out;
  out.n = n;
  out.kind = kind;
  out.probs.assign(size(), 0.0);
  double z = 0;
  for (uint64_t s = 0; s < size(); ++s)
    if ((uint32_t(s) & mask) == value) {
      out.probs[s] = probs[s];
      z += probs[s];
    }
  require(z > 0, Err::EmptySupport, "conditioning event has probability zero");
  for (auto& p : out.probs) p /= z;
  out.log_z = log_z + std::log(z);
  return out;
}

std::vector<double> DistTable::marginals() const {
  std::vector<double> m(size_t(n), 0.0);
  for (uint32_t s : support())
    for (int i = 0; i < n; ++i)
      if (s >> i & 1u) m[size_t(i)] += probs[s];
  return m;
}

void DistTable::normalize() {
  double z = 0;
  for (double p : probs) z += p;
  require(z > 0, Err::EmptySupport, "all-zero table");
  for (auto& p : probs) p /= z;
  support_.clear();
}

DistTable make_dist_from_log_weights(int n, DomainKind kind, std::vector<double> lw) {
  require(lw.size() == (uint64_t(1) << n), Err::TooLarge, "log-weight table size mismatch");
  uint64_t total = uint64_t(1) << n;
  double mx = blocked_max(total, [&](uint64_t s) { return lw[s]; });
  require(std::isfinite(mx), Err::EmptySupport, "no feasible configuration");
  double z = blocked_sum(total, [&](uint64_t s) {
    return lw[s] > kNegInf ? std::exp(lw[s] - mx) : 0.0;
  });
  require(z > 0, Err::EmptySupport, "no feasible configuration");
  DistTable d;
  d.n = n;
  d.kind = kind;
  d.log_z = mx + std::log(z);
  d.probs.assign(total, 0.0);
#pragma omp parallel for schedule(static)
  for (int64_t s = 0; s < int64_t(total); ++s)
    if (lw[uint64_t(s)] > kNegInf) d.probs[uint64_t(s)] = std::exp(lw[uint64_t(s)] - mx) / z;
  return d;
}

}  // namespace spinlab
