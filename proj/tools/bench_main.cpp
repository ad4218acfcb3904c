// Benchmark of the OpenMP kernels against their serial references:
// Gibbs enumeration, pair-moment accumulation, and the dense matrix product
// used by the mixing-time search.

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <iostream>

#include "spinlab/exact_oracle.hpp"
#include "spinlab/graph.hpp"

using namespace spinlab;
using clk = std::chrono::high_resolution_clock;

namespace {

double seconds_since(clk::time_point t0) {
  return std::chrono::duration<double>(clk::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  int n = argc > 1 ? std::atoi(argv[1]) : 18;
  int reps = argc > 2 ? std::atoi(argv[2]) : 3;
  std::cout << "threads " << omp_get_max_threads() << ", cycle(" << n << "), " << reps
            << " reps\n";

  Graph g = cycle_graph(n);
  SpinSystem sys(g, SpinParams(0.3, 0.7, 1.2));

  double t_par = 1e300, t_ser = 1e300;
  DistTable mu, mu_ref;
  for (int r = 0; r < reps; ++r) {
    auto t0 = clk::now();
    mu = enumerate_dist(sys, 30);
    t_par = std::min(t_par, seconds_since(t0));
    t0 = clk::now();
    mu_ref = enumerate_dist_reference(sys, 30);
    t_ser = std::min(t_ser, seconds_since(t0));
  }
  double worst = 0;
  for (uint64_t s = 0; s < mu.size(); ++s)
    worst = std::max(worst, std::abs(mu.probs[s] - mu_ref.probs[s]));
  std::cout << "enumerate:     omp " << t_par << " s, serial " << t_ser << " s, speedup "
            << t_ser / t_par << ", max |diff| " << worst << "\n";

  double m_par = 1e300, m_ser = 1e300;
  PairMoments pm, pm_ref;
  for (int r = 0; r < reps; ++r) {
    auto t0 = clk::now();
    pm = pair_moments(mu);
    m_par = std::min(m_par, seconds_since(t0));
    t0 = clk::now();
    pm_ref = pair_moments_reference(mu);
    m_ser = std::min(m_ser, seconds_since(t0));
  }
  std::cout << "pair moments:  omp " << m_par << " s, serial " << m_ser << " s, speedup "
            << m_ser / m_par << ", max |diff| "
            << (pm.p11 - pm_ref.p11).cwiseAbs().maxCoeff() << "\n";

  int dim = 512;
  Matrix a = Matrix::Random(dim, dim), b = Matrix::Random(dim, dim), c;
  double g_par = 1e300, g_ser = 1e300;
  Matrix c_ref;
  for (int r = 0; r < reps; ++r) {
    auto t0 = clk::now();
    matmul(a, b, c);
    g_par = std::min(g_par, seconds_since(t0));
    t0 = clk::now();
    c_ref = matmul_reference(a, b);
    g_ser = std::min(g_ser, seconds_since(t0));
  }
  std::cout << "matmul(" << dim << "):   omp " << g_par << " s, serial " << g_ser
            << " s, speedup " << g_ser / g_par << ", max |diff| "
            << (c - c_ref).cwiseAbs().maxCoeff() << "\n";
  return 0;
}
