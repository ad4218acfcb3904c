#pragma once

#include <cstdint>
#include <vector>

#include "spinlab/dist_table.hpp"

namespace spinlab {

// Exact 1-Wasserstein distance between two distributions on bitmask states
// under the Hamming ground metric, solved as a min-cost transport problem
// (successive shortest augmenting paths with integer arc costs).
double w1_hamming(const std::vector<uint32_t>& states_a, const std::vector<double>& mass_a,
                  const std::vector<uint32_t>& states_b, const std::vector<double>& mass_b);

double w1_hamming(const DistTable& a, const DistTable& b);

}  // namespace spinlab
