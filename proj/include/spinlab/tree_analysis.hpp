#pragma once

#include <functional>
#include <vector>

#include "spinlab/saw_tree.hpp"
#include "spinlab/spin_model.hpp"

namespace spinlab {

// x -> (1-bg) x / ((bx+1)(x+g)); the contraction weight of the tree recursion
double psi_weight(const SpinParams& p, double x);
// x -> lambda ((bx+1)/(x+g))^d
double tree_map(const SpinParams& p, int d, double x);

// One step of the marginal-ratio recursion; child ratios may be 0 or +inf
// (pinned-0 / pinned-1 conventions).
double tree_ratio_recursion(const SpinParams& p, const std::vector<double>& child_ratios);

enum class UniquenessClass { unique_with_slack, critical, non_unique };

struct UniquenessReport {
  int d = 0;
  double x_hat = 0;     // unique positive fixed point of the tree map
  double slack = 0;     // 1 - |f'(x_hat)|
  UniquenessClass classification = UniquenessClass::unique_with_slack;
};

UniquenessReport uniqueness(const SpinParams& p, int d);

// Critical field: smaller root of d(1-bg)x = (bx+1)(x+g) and the field that
// makes it the fixed point.
struct CriticalPoint {
  double lambda_c = 0;
  double x_c = 0;
};
CriticalPoint critical_lambda(double beta, double gamma, int d);

// For critically d-unique (b,g,l): the tilted system (tb,tg,l) is d-unique
// with slack at least (t-1)sqrt(bg)/(1-sqrt(bg)), for t in [1, 1/sqrt(bg)].
double tilted_slack_lower_bound(const SpinParams& critical_params, int d, double theta);

// Piecewise potential certifying total-influence bounds through the tree
// recursion: 1/delta up to the fixed point, 1 + (D/delta) psi(f^{-1}(x))
// across the bridge, 0 beyond lambda gamma^{-D}.
struct ControlFunction {
  SpinParams params;  // post-flip parameters
  bool flipped = false;
  int Delta = 0, D = 0;
  double delta = 0;  // exact slack
  double x_hat = 0;
  double x_zero = 0;  // lambda gamma^{-D}

  double xi(double x) const;
  double f(double x) const { return tree_map(params, D, x); }
  double f_inverse(double y) const;  // bisection on [0, x_hat]
  double psi(double x) const { return psi_weight(params, x); }
};

// Applies the 0/1 spin swap when lambda > (gamma/beta)^(Delta/2) before
// solving for the fixed point. Throws ZeroSlack at criticality.
ControlFunction make_control_function(const SpinParams& p, int Delta);

struct ControlVerification {
  long trials = 0;
  double worst_violation = 0;       // functional inequality residual
  double worst_cap_violation = 0;   // xi(x) psi(x) - (1-delta)/(delta D)
  double grid_max_xipsi = 0;        // max over grid of xi psi
  double cap_value = 0;             // (1-delta)/(delta (Delta-1))
  bool flipped = false;
  bool pass = false;
};
ControlVerification verify_control_function(const ControlFunction& cf, long trials,
                                            uint64_t seed, double tol = 1e-9);

// Bottom-up total influence on a pinned tree. Pinned copies contribute their
// ratio limit and zero influence weight.
struct TiResult {
  double ti_root = 0;
  double ratio_root = 0;
};
TiResult ti_recursion(const PinnedTree& tree, const SpinParams& p);

// max over roots of (TI of the SAW tree) - 1; an upper bound on the largest
// influence-matrix eigenvalue under the given pinning.
double saw_si_bound(const Graph& g, const SpinParams& p, const std::map<int, int>& pinning = {});

// (Delta(1-delta)/((Delta-1)delta), 1 + same)
std::pair<double, double> si_ci_formula_bounds(double delta, int Delta);

// Quantities of the vertex-tilting route at criticality.
struct VertexTiltingReport {
  double kappa = 0;
  double x_c = 0;
  double lambda_c = 0;
  double middle = 0;        // sqrt((1-bg)/(beta_c^2-bg))
  double lower = 0;         // Delta/(Delta-2)
  bool chain_holds = false; // lower <= middle <= kappa <= 10
  std::function<double(double)> lambda_of_x;
  std::function<double(double)> delta_of_x;
};
VertexTiltingReport vertex_tilting_quantities(double beta, double gamma, int Delta,
                                              double bar_beta);

// Solve for the field giving a prescribed exact slack at depth d (bisection
// on lambda in (0, lambda_c)).
double lambda_for_slack(double beta, double gamma, int d, double slack_target);

}  // namespace spinlab
