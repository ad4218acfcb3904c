#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spinlab/dist_table.hpp"
#include "spinlab/graph.hpp"
#include "spinlab/linalg.hpp"
#include "spinlab/spin_model.hpp"

namespace spinlab {

// Which dynamics a transition matrix realizes.
struct ChainSpec {
  enum class Kind { glauber, vertex_field, edge_field, event_field, swendsen_wang };
  enum class UpMode { exact_enumeration, nested_glauber };

  Kind kind = Kind::glauber;
  double theta = 0.5;   // tilt for vertex/edge field
  EventFamily family;   // event_field only
  UpMode up_mode = UpMode::exact_enumeration;
  long nested_sweeps = 0;  // 0 = default 10 n log n
  uint64_t seed = 0;

  static ChainSpec glauber(uint64_t seed = 0);
  static ChainSpec vertex_field(double theta, uint64_t seed = 0);
  static ChainSpec edge_field(double theta, uint64_t seed = 0);
  static ChainSpec event_field(EventFamily family, uint64_t seed = 0);
  static ChainSpec swendsen_wang(uint64_t seed = 0);
  std::string name() const;
};

// Row-stochastic matrix over the support of the stationary DistTable.
struct TransitionMatrix {
  int dim = 0;
  std::vector<uint32_t> states;  // support masks, ascending
  Matrix rows;
  Vector pi;  // stationary probabilities restricted to the support
  std::string chain;

  int index_of(uint32_t state) const;
};

int max_states_cap();  // SPINLAB_MAX_STATES env override, default 1<<20

// Exact Gibbs distribution; cap bounds the number of sites.
DistTable enumerate_dist(const SpinSystem& sys, int site_cap = 20);
DistTable enumerate_dist_reference(const SpinSystem& sys, int site_cap = 20);  // serial

// Random-cluster distribution over edge subsets, conditioned on the edges of
// pinned_mask being present.
DistTable enumerate_rc(const Graph& g, const RandomClusterParams& rc, uint64_t pinned_mask = 0);

// marginals p1 and pairwise occupation joints p11 (diagonal = p1)
struct PairMoments {
  Vector p1;
  Matrix p11;
};
PairMoments pair_moments(const DistTable& dist);
PairMoments pair_moments_reference(const DistTable& dist);

// Moments of an arbitrary family of binary events under dist.
PairMoments event_moments(const DistTable& dist, const EventFamily& fam);

// Psi(u,v) = P(Xv=1|Xu=1) - P(Xv=1|Xu=0); zero row when the marginal of u is
// not interior; zero diagonal.
Matrix influence_matrix(const DistTable& dist);
double lambda_max_influence(const DistTable& dist);
double total_influence(const DistTable& dist, int r);

// Second-order correlation matrix over oriented edges (events sigma_u=1,
// sigma_v=0) and the Swendsen-Wang correlation matrix over edges (events
// sigma_u=sigma_v). literal_diagonal keeps the defining formula on the
// diagonal (entry 1 - mu(event)); otherwise the diagonal is zeroed.
Matrix second_order_correlation_matrix(const DistTable& dist, const Graph& g,
                                       bool literal_diagonal = true);
Matrix sw_correlation_matrix(const DistTable& dist, const Graph& g, bool literal_diagonal = true);

// lambda_max of the correlation matrix of event indicators computed through
// the covariance pencil (sup f'Cov f / f'diag(mean) f).
double lambda_max_event_correlation(const DistTable& dist, const EventFamily& fam,
                                    bool literal_diagonal = true);

enum class DivKind { TV, chi2, KL };
double divergence(DivKind kind, const DistTable& nu, const DistTable& mu);

// Exact one-step law of the requested chain, summing over all internal
// randomness. Dedicated constructions for the five kinds; the generic
// event-field path is a separate implementation used for equivalence tests.
TransitionMatrix transition_matrix(const SpinSystem& sys, const ChainSpec& chain,
                                   int state_cap = 4096);

struct GapResult {
  double gap;           // 1 - lambda_2
  double absolute_gap;  // 1 - max |lambda != 1|
};
GapResult spectral_gap(const TransitionMatrix& p);

long exact_mixing_time(const TransitionMatrix& p, double eps = 0.25, long step_cap = 1000000);

// Minimal K with Var(f) <= K sum_i E[Var(f | X_-i)]; +infinity when the
// single-site dynamics of dist is disconnected.
double at_variance_constant(const DistTable& dist, int support_cap = 4096);

// Minimal R with Var(f(Y1)) <= R E[Var(f(Y1)|Y_theta)] for the down-up chain
// p; equals 1/gap(p). The identity chain returns 1 by convention.
double conservation_constant_variance(const TransitionMatrix& p);

// Law of (Y_theta, Y_1) for an event-field denoising process at time t:
// joint over (event subset T, configuration sigma). Returned as rows indexed
// by T (bitmask over fam events, only reachable T kept).
struct DenoisingJoint {
  std::vector<uint64_t> t_masks;
  std::vector<double> t_probs;                  // P(Y_theta = T)
  std::vector<std::vector<double>> conditional; // per T: law of Y1 over 2^n masks
};
DenoisingJoint denoising_joint(const SpinSystem& sys, const EventFamily& fam, double t);

}  // namespace spinlab
