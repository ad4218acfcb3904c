#pragma once

#include <string>
#include <vector>

#include "spinlab/exact_oracle.hpp"

namespace spinlab {

enum class Verdict { holds, violated, not_applicable };

struct BoundReport {
  std::string name;
  double formula_value = 0;
  double measured_value = 0;
  double margin = 0;  // formula - measured for upper bounds
  Verdict verdict = Verdict::not_applicable;
};

const char* verdict_name(Verdict v);

// Independent thinning: keep index i with probability theta_i.
DistTable down_operator(const DistTable& dist, const std::vector<double>& theta);

// lambda_max(Cor_mu) <= lambda_max(Cor_{mu D}) * max_i 1/theta_i
BoundReport si_reduction_check(const DistTable& mu, const std::vector<double>& theta);

// Correlation-matrix eigenvalue of a subset distribution (Cov pencil against
// diag of the mean vector). literal_diagonal keeps the defining formula on
// the diagonal (1 - mu(i)); the zeroed variant isolates the off-diagonal
// correlation content.
double lambda_max_subset_correlation(const DistTable& mu, bool literal_diagonal = true);

// Worst 1-Wasserstein (Hamming) distance between conditionals that differ in
// one pinned coordinate, over all feasible adjacent pinning pairs.
double coupling_independence_exact(const DistTable& dist, int support_cap = 512);

// Covariance-domination and tilted second-order correlation checks for
// sampled pinnings.
std::vector<BoundReport> stability_matrix_checks(const SpinSystem& sys, double theta,
                                                 int num_pinnings, uint64_t seed);

// Stability-rate integral for the Swendsen-Wang denoising process (variance
// route), in closed form with an adaptive-quadrature cross-check, and the
// resulting spectral-gap lower bound exp(-I)/2.
double sw_stability_integral(double beta, int Delta, double delta);
double sw_stability_integral_quadrature(double beta, int Delta, double delta,
                                        double abs_tol = 1e-10);
double sw_gap_lower_bound(double beta, double lambda, int Delta, double delta);

// (beta gamma)^{-Delta} (e n)^{2 Delta^2 (1-sqrt(bg)) / ((Delta-1) sqrt(bg))}
double edge_field_R_bound(const SpinParams& p, int Delta, int n);

// mu^{S,tau}(u)/mu^{S,tau}(not u) <= (1+delta)^{-k_u} for all free u, for an
// Ising system near unit edge activity.
BoundReport marginal_bound_check(const SpinSystem& sys, const std::vector<int>& mono_edge_ids,
                                 double delta);

// Evaluators for the explicit inside-O expressions of the headline mixing
// statements. Verdicts are not_applicable: the asymptotic statements carry
// unspecified constants.
enum class MixingWhich {
  glauber_critical,
  edge_field_mixing,
  glauber_via_edge,
  glauber_via_vertex,
  sw_mixing
};
struct MixingInputs {
  double beta = 0, gamma = 0, lambda = 0;
  int Delta = 3;
  long n = 100;
  double bar_beta = 0;  // glauber_via_* routes
  double delta = 0;     // sw route
};
BoundReport mixing_bound_evaluator(MixingWhich which, const MixingInputs& in);

double glauber_critical_alpha(const SpinParams& p);                // case split on beta
double edge_field_exponent_c(double beta, double gamma, int Delta);
double via_edge_k(int Delta, double bar_beta);
double via_edge_epsilon(int Delta, double bar_beta);
double via_vertex_kappa(int Delta, double bar_beta);
// entropy-route integral for Swendsen-Wang; requires delta in (0, 0.01)
double sw_entropy_integral(double beta, int Delta, double delta);

}  // namespace spinlab
