#pragma once

#include <vector>

#include "spinlab/exact_oracle.hpp"
#include "spinlab/spin_model.hpp"

namespace spinlab {

// sum_{i=1}^r Delta (Delta-1)^{i-1} ((1-delta)/(Delta-1))^i; converges to
// Delta(1-delta)/((Delta-1)delta) as r grows.
double truncated_lower_sum(double delta, int Delta, int r);

struct DistanceClass {
  int dist = 0;
  double mean_abs_influence = 0;
  double min_abs_influence = 0;
  double max_abs_influence = 0;
  double predicted = 0;  // ((1-delta)/(Delta-1))^dist
};

struct LowerBoundRun {
  int girth = 0;
  SpinParams params;
  double slack = 0;
  double lambda_max_measured = 0;
  double ceiling = 0;        // Delta(1-delta)/((Delta-1)delta)
  int r = 0;                 // floor(girth/2) - 1
  double truncated_sum = 0;  // at r
  double test_vector_quotient = 0;  // bipartite +-1 Rayleigh value
  std::vector<DistanceClass> per_distance;
};

// Tunes the field of the (beta,gamma) family to the requested exact slack at
// d = Delta-1, enumerates the Gibbs distribution, and reports the influence
// spectrum against the ceiling and the truncated geometric sum.
LowerBoundRun run_lower_bound_experiment(const Graph& g, double beta, double gamma,
                                         double slack_target, int site_cap = 18);

}  // namespace spinlab
