#include "spinlab/tree_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spinlab/exact_oracle.hpp"
#include "spinlab/rng.hpp"

namespace spinlab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRelTol = 1e-12;

double ratio_factor(const SpinParams& p, double x) {
  if (std::isinf(x)) return p.beta;  // (bx+1)/(x+g) -> b
  return (p.beta * x + 1) / (x + p.gamma);
}

}  // namespace

double psi_weight(const SpinParams& p, double x) {
  if (x == 0 || std::isinf(x)) return 0.0;  // boundary atoms carry no influence
  return (1 - p.beta * p.gamma) * x / ((p.beta * x + 1) * (x + p.gamma));
}

double tree_map(const SpinParams& p, int d, double x) {
  return p.lambda * std::pow(ratio_factor(p, x), d);
}

double tree_ratio_recursion(const SpinParams& p, const std::vector<double>& child_ratios) {
  double r = p.lambda;
  for (double x : child_ratios) {
    require(x >= 0, Err::NegativeArgument, "ratios live in [0, +inf]");
    require(!(p.gamma == 0 && p.beta == 0 && std::isinf(x)), Err::IndeterminateLimit,
            "0*inf limit");
    r *= ratio_factor(p, x);
  }
  return r;
}

UniquenessReport uniqueness(const SpinParams& p, int d) {
  // beta*gamma = 1 is the product boundary: f is constant and the slack is 1
  // (a one-ulp overshoot from tilt arithmetic is tolerated)
  require(p.beta * p.gamma <= 1 + 1e-9, Err::NotAntiferromagnetic, "needs beta*gamma <= 1");
  require(p.lambda > 0, Err::ZeroField, "needs lambda > 0");
  require(d >= 1, Err::DeltaOutOfRange, "needs d >= 1");
  // f is strictly decreasing for bg < 1, so g(x) = f(x) - x has a unique root
  double hi = std::max(p.lambda * std::pow(p.gamma, -d), 1.0) * (1 + 1e-6);
  double lo = 0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (tree_map(p, d, mid) > mid)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= kRelTol * std::max(1.0, hi)) break;
  }
  UniquenessReport rep;
  rep.d = d;
  rep.x_hat = 0.5 * (lo + hi);
  rep.slack = std::min(1.0, 1.0 - d * psi_weight(p, rep.x_hat));
  double ctol = 1e-9;
  rep.classification = rep.slack > ctol   ? UniquenessClass::unique_with_slack
                       : rep.slack < -ctol ? UniquenessClass::non_unique
                                           : UniquenessClass::critical;
  return rep;
}

CriticalPoint critical_lambda(double beta, double gamma, int d) {
  SpinParams p(beta, gamma, 1.0);
  require(p.antiferromagnetic(), Err::NotAntiferromagnetic, "needs beta*gamma < 1");
  double root = std::sqrt(beta * gamma);
  require(d >= 2 || beta > 0, Err::NoCriticalPoint, "d = 1 hard constraint has no critical field");
  require(root <= double(d - 1) / double(d + 1) + 1e-15, Err::NoCriticalPoint,
          "uniqueness holds for every field");
  CriticalPoint c;
  if (beta == 0) {
    require(d >= 2, Err::NoCriticalPoint, "d = 1 has no critical field");
    c.x_c = gamma / (d - 1);
  } else {
    // beta x^2 + (1 + bg - d(1-bg)) x + gamma = 0, smaller root
    double b = d * (1 - beta * gamma) - (1 + beta * gamma);
    double disc = std::max(0.0, b * b - 4 * beta * gamma);
    c.x_c = (b - std::sqrt(disc)) / (2 * beta);
  }
  c.lambda_c = c.x_c * std::pow((c.x_c + gamma) / (beta * c.x_c + 1), d);
  return c;
}

double tilted_slack_lower_bound(const SpinParams& p, int d, double theta) {
  double root = std::sqrt(p.beta * p.gamma);
  double theta_max = root > 0 ? 1 / root : kInf;
  require(theta >= 1 && theta <= theta_max + 1e-12, Err::ThetaOutOfRange,
          "theta must lie in [1, 1/sqrt(beta gamma)]");
  UniquenessReport rep = uniqueness(p, d);
  require(std::abs(rep.slack) <= 1e-6, Err::NotCritical, "parameters must be critically d-unique");
  return root > 0 ? (theta - 1) * root / (1 - root) : 0.0;
}

double ControlFunction::xi(double x) const {
  require(!(x < 0), Err::NegativeArgument, "xi domain is [0, +inf]");
  if (x <= x_hat) return 1.0 / delta;
  // the bridge is the closed interval up to lambda gamma^{-D}; tolerate the
  // one-ulp overshoot of recomputing that endpoint as a product of factors
  if (x <= x_zero * (1 + 1e-12))
    return 1.0 + (double(D) / delta) * psi_weight(params, f_inverse(std::min(x, x_zero)));
  return 0.0;
}

double ControlFunction::f_inverse(double y) const {
  // f decreases from f(0) = lambda gamma^{-D} = x_zero to f(x_hat) = x_hat
  double lo = 0, hi = x_hat;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (f(mid) > y)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= kRelTol * std::max(1.0, hi)) break;
  }
  return 0.5 * (lo + hi);
}

ControlFunction make_control_function(const SpinParams& p, int Delta) {
  require(Delta >= 3, Err::DeltaOutOfRange, "needs Delta >= 3");
  require(p.antiferromagnetic(), Err::NotAntiferromagnetic, "needs beta*gamma < 1");
  ControlFunction cf;
  cf.params = p;
  cf.Delta = Delta;
  cf.D = Delta - 1;
  // swap spin roles when the field exceeds (gamma/beta)^(Delta/2)
  bool flip_needed =
      p.beta > 0 && p.lambda > std::pow(p.gamma / p.beta, double(Delta) / 2.0);
  if (flip_needed) {
    cf.params = flip(p);
    cf.flipped = true;
  }
  UniquenessReport rep = uniqueness(cf.params, cf.D);
  require(rep.slack > 1e-9, Err::ZeroSlack, "control function undefined at criticality");
  cf.delta = rep.slack;
  cf.x_hat = rep.x_hat;
  cf.x_zero = cf.params.lambda * std::pow(cf.params.gamma, -cf.D);
  return cf;
}

ControlVerification verify_control_function(const ControlFunction& cf, long trials, uint64_t seed,
                                            double tol) {
  const SpinParams& p = cf.params;
  bool force_full_degree = std::max(p.beta, p.gamma) > 1;
  double cap = (1 - cf.delta) / (cf.delta * (cf.Delta - 1));
  int nblocks = 128;
  std::vector<double> worst_fun(size_t(nblocks), 0.0), worst_cap(size_t(nblocks), 0.0),
      grid_max(size_t(nblocks), 0.0);
#pragma omp parallel for schedule(static)
  for (int b = 0; b < nblocks; ++b) {
    long lo = trials * long(b) / nblocks, hi = trials * long(b + 1) / nblocks;
    double wf = 0, wc = 0, gm = 0;
    for (long t = lo; t < hi; ++t) {
      Rng rng(seed, uint64_t(t), 0x5eed);
      int d = force_full_degree ? cf.D : int(rng.next_below(uint64_t(cf.D) + 1));
      double rhs = 1.0, prod = p.lambda;
      for (int i = 0; i < d; ++i) {
        double roll = rng.next_double(), x;
        if (roll < 0.08)
          x = 0.0;
        else if (roll < 0.16)
          x = kInf;
        else
          x = std::exp(rng.uniform(std::log(1e-8), std::log(1e8))) * std::max(cf.x_hat, 1e-3);
        prod *= ratio_factor(p, x);
        if (x != 0 && !std::isinf(x)) {
          double xi_x = cf.xi(x);
          rhs += psi_weight(p, x) * xi_x;
          wc = std::max(wc, xi_x * psi_weight(p, x) - cap);
        }
      }
      wf = std::max(wf, rhs - cf.xi(prod));
      // grid point for the cap bound
      double gx = std::exp(rng.uniform(std::log(1e-8), std::log(1e8))) * std::max(cf.x_hat, 1e-3);
      double v = cf.xi(gx) * psi_weight(p, gx);
      gm = std::max(gm, v);
      wc = std::max(wc, v - cap);
    }
    worst_fun[size_t(b)] = wf;
    worst_cap[size_t(b)] = wc;
    grid_max[size_t(b)] = gm;
  }
  ControlVerification out;
  out.trials = trials;
  out.flipped = cf.flipped;
  out.cap_value = cap;
  for (int b = 0; b < nblocks; ++b) {
    out.worst_violation = std::max(out.worst_violation, worst_fun[size_t(b)]);
    out.worst_cap_violation = std::max(out.worst_cap_violation, worst_cap[size_t(b)]);
    out.grid_max_xipsi = std::max(out.grid_max_xipsi, grid_max[size_t(b)]);
  }
  // the cap is attained at the fixed point
  out.grid_max_xipsi = std::max(out.grid_max_xipsi, cf.xi(cf.x_hat) * psi_weight(p, cf.x_hat));
  out.pass = out.worst_violation <= tol && out.worst_cap_violation <= tol;
  return out;
}

TiResult ti_recursion(const PinnedTree& tree, const SpinParams& p) {
  require(tree.is_free(tree.root), Err::RootPinned, "root must be unpinned");
  int n = tree.tree.n;
  std::vector<double> ratio(size_t(n), 0.0), ti(size_t(n), 1.0);
  std::vector<std::vector<int>> children(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v)
    if (tree.parent[size_t(v)] >= 0) children[size_t(tree.parent[size_t(v)])].push_back(v);
  // leaves-first order from the root
  std::vector<int> order;
  order.reserve(size_t(n));
  order.push_back(tree.root);
  for (size_t k = 0; k < order.size(); ++k)
    for (int c : children[size_t(order[k])]) order.push_back(c);
  std::reverse(order.begin(), order.end());
  for (int v : order) {
    if (!tree.is_free(v)) {
      ratio[size_t(v)] = tree.pin[size_t(v)] ? kInf : 0.0;
      continue;
    }
    double r = p.lambda, t = 1.0;
    for (int c : children[size_t(v)]) {
      r *= ratio_factor(p, ratio[size_t(c)]);
      if (tree.is_free(c)) t += psi_weight(p, ratio[size_t(c)]) * ti[size_t(c)];
    }
    ratio[size_t(v)] = r;
    ti[size_t(v)] = t;
  }
  return {ti[size_t(tree.root)], ratio[size_t(tree.root)]};
}

double saw_si_bound(const Graph& g, const SpinParams& p, const std::map<int, int>& pinning) {
  require(p.antiferromagnetic(), Err::NotAntiferromagnetic, "needs beta*gamma < 1");
  double best = 0;
  bool any = false;
  for (int r = 0; r < g.n; ++r) {
    if (pinning.count(r)) continue;
    PinnedTree t = saw_tree(g, r, pinning);
    best = std::max(best, ti_recursion(t, p).ti_root - 1.0);
    any = true;
  }
  require(any, Err::RootPinned, "every vertex is pinned");
  return best;
}

std::pair<double, double> si_ci_formula_bounds(double delta, int Delta) {
  require(delta > 1e-12 && delta <= 1, Err::DeltaOutOfRange, "slack must lie in (0,1]");
  double si = double(Delta) * (1 - delta) / ((Delta - 1) * delta);
  return {si, 1 + si};
}

VertexTiltingReport vertex_tilting_quantities(double beta, double gamma, int Delta,
                                              double bar_beta) {
  require(Delta >= 3, Err::DeltaOutOfRange, "needs Delta >= 3");
  require(bar_beta <= (Delta - 2.1) / Delta + 1e-15, Err::BarBetaTooLarge,
          "bar_beta must be at most (Delta-2.1)/Delta");
  double bg = beta * gamma;
  require(std::sqrt(bg) <= bar_beta + 1e-15, Err::InputsOutOfRegime,
          "needs sqrt(beta gamma) <= bar_beta");
  int D = Delta - 1;
  double beta_c = double(Delta - 2) / Delta;
  VertexTiltingReport rep;
  rep.kappa = std::sqrt((1 - bar_beta * bar_beta) / (beta_c * beta_c - bar_beta * bar_beta));
  auto cp = critical_lambda(beta, gamma, D);
  rep.x_c = cp.x_c;
  rep.lambda_c = cp.lambda_c;
  rep.middle = std::sqrt((1 - bg) / (beta_c * beta_c - bg));
  rep.lower = double(Delta) / (Delta - 2);
  rep.chain_holds = rep.lower <= rep.middle + 1e-12 && rep.middle <= rep.kappa + 1e-12 &&
                    rep.kappa <= 10 + 1e-12;
  SpinParams p(beta, gamma, 1.0);
  rep.lambda_of_x = [p, D](double x) {
    return x * std::pow((x + p.gamma) / (p.beta * x + 1), D);
  };
  rep.delta_of_x = [p, D](double x) { return 1.0 - D * psi_weight(p, x); };
  return rep;
}

double lambda_for_slack(double beta, double gamma, int d, double slack_target) {
  require(slack_target > 0 && slack_target < 1, Err::DeltaOutOfRange, "target slack in (0,1)");
  require(beta * gamma < 1, Err::NotAntiferromagnetic, "needs beta*gamma < 1");
  // d psi(x) = 1 - delta is a quadratic in the fixed point; the smaller root
  // sits on the subcritical branch, and the field follows from the inverse of
  // the tree map at that fixed point
  double s = 1 - slack_target;
  double x;
  if (beta == 0) {
    require(d > s, Err::NoCriticalPoint, "slack target unattainable");
    x = s * gamma / (d - s);
  } else {
    double b = d * (1 - beta * gamma) / s - (1 + beta * gamma);
    double disc = b * b - 4 * beta * gamma;
    require(disc >= 0, Err::NoCriticalPoint, "slack target unattainable");
    x = (b - std::sqrt(disc)) / (2 * beta);
    require(x > 0, Err::NoCriticalPoint, "slack target unattainable");
  }
  double lambda = x * std::pow((x + gamma) / (beta * x + 1), d);
  // round trip through the fixed-point solver as a residual check
  double measured = uniqueness(SpinParams(beta, gamma, lambda), d).slack;
  require(std::abs(measured - slack_target) <= 1e-8, Err::NoCriticalPoint,
          "slack equation solution failed verification");
  return lambda;
}

}  // namespace spinlab
