#include "spinlab/stability.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "spinlab/rng.hpp"
#include "spinlab/transport.hpp"
#include "spinlab/tree_analysis.hpp"

namespace spinlab {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::holds:
      return "holds";
    case Verdict::violated:
      return "violated";
    default:
      return "not_applicable";
  }
}

DistTable down_operator(const DistTable& dist, const std::vector<double>& theta) {
  require(int(theta.size()) == dist.n, Err::ThetaOutOfRange, "one tilt per index");
  for (double t : theta)
    require(t > 0 && t <= 1, Err::ThetaOutOfRange, "tilts live in (0,1]");
  DistTable out;
  out.n = dist.n;
  out.kind = dist.kind;
  out.log_z = dist.log_z;
  out.probs.assign(dist.size(), 0.0);
  for (uint32_t s : dist.support()) {
    double base = dist.prob(s);
    uint32_t t = s;
    while (true) {
      double w = base;
      for (int i = 0; i < dist.n; ++i) {
        if (!(s >> i & 1u)) continue;
        w *= (t >> i & 1u) ? theta[size_t(i)] : 1 - theta[size_t(i)];
      }
      out.probs[t] += w;
      if (t == 0) break;
      t = (t - 1) & s;
    }
  }
  out.normalize();
  return out;
}

double lambda_max_subset_correlation(const DistTable& mu, bool literal_diagonal) {
  auto m = pair_moments(mu);
  Matrix cov = m.p11 - m.p1 * m.p1.transpose();
  if (!literal_diagonal)
    for (int i = 0; i < mu.n; ++i) cov(i, i) -= m.p1[i] * (1 - m.p1[i]);
  return lambda_max_pencil(cov, m.p1);
}

BoundReport si_reduction_check(const DistTable& mu, const std::vector<double>& theta) {
  DistTable pushed = down_operator(mu, theta);
  double lhs = lambda_max_subset_correlation(mu);
  double inv = 0;
  for (double t : theta) inv = std::max(inv, 1.0 / t);
  double rhs = lambda_max_subset_correlation(pushed) * inv;
  BoundReport rep;
  rep.name = "spectral-stability-under-down-operator";
  rep.measured_value = lhs;
  rep.formula_value = rhs;
  rep.margin = rhs - lhs;
  rep.verdict = lhs <= rhs + 1e-9 ? Verdict::holds : Verdict::violated;
  return rep;
}

double coupling_independence_exact(const DistTable& dist, int support_cap) {
  require(int(dist.support().size()) <= support_cap, Err::TooLarge, "support too large");
  int n = dist.n;
  require(n <= 20, Err::TooLarge, "pinning enumeration needs n <= 20");
  double worst = 0;
  // iterate over pinned sets; for each pinned set, all feasible assignments
  for (uint64_t pinned_bits = 0; pinned_bits < (uint64_t(1) << n); ++pinned_bits) {
    uint32_t pinned = uint32_t(pinned_bits);
    // assignments on the pinned set that extend feasibly
    uint32_t sub = pinned;
    while (true) {
      uint32_t vals = sub;
      bool feasible = false;
      for (uint32_t s : dist.support())
        if ((s & pinned) == vals) {
          feasible = true;
          break;
        }
      if (feasible) {
        for (int i = 0; i < n; ++i) {
          if (pinned >> i & 1u) continue;
          uint32_t m1 = pinned | (1u << i);
          bool f1 = false, f0 = false;
          for (uint32_t s : dist.support()) {
            if ((s & m1) == (vals | (1u << i))) f1 = true;
            if ((s & m1) == vals) f0 = true;
            if (f1 && f0) break;
          }
          if (!f1 || !f0) continue;
          DistTable d1 = dist.conditioned_mask(m1, vals | (1u << i));
          DistTable d0 = dist.conditioned_mask(m1, vals);
          worst = std::max(worst, w1_hamming(d1, d0));
        }
      }
      if (sub == 0) break;
      sub = (sub - 1) & pinned;
    }
  }
  return worst;
}

std::vector<BoundReport> stability_matrix_checks(const SpinSystem& sys, double theta,
                                                 int num_pinnings, uint64_t seed) {
  require(theta > 0 && theta < 1, Err::ThetaOutOfRange, "theta in (0,1)");
  std::vector<BoundReport> out;
  DistTable base = enumerate_dist(sys);
  Rng rng(seed, 0, 0x57ab);
  double root = std::sqrt(sys.params.beta * sys.params.gamma);
  int Delta = sys.g.max_degree;

  for (int k = 0; k < num_pinnings; ++k) {
    // random feasible pinning (possibly empty)
    Pinning pn = sys.pin;
    for (int v = 0; v < sys.n(); ++v)
      if (rng.bernoulli(0.3)) pn.assignments[v] = int(rng.next_below(2));
    SpinSystem pinned(sys.g, sys.params, pn);
    if (!pinning_feasible(pinned)) continue;

    // (a) Cov((1-theta)*mu^S) is dominated by C diag(mean) with C the exact
    // coupling independence of the tilted conditional law
    SpinSystem tilted_v(sys.g, vertex_tilt(sys.params, 1 - theta), pn);
    DistTable nu = enumerate_dist(tilted_v);
    double ci = coupling_independence_exact(nu);
    auto m = pair_moments(nu);
    Matrix cov = m.p11 - m.p1 * m.p1.transpose();
    Matrix dom = -cov;
    for (int i = 0; i < nu.n; ++i) dom(i, i) += ci * m.p1[i];
    double min_eig = lambda_min_symmetric(dom);
    BoundReport a;
    a.name = "covariance-dominated-by-CI-diag(pinning " + std::to_string(k) + ")";
    a.formula_value = ci;
    a.measured_value = min_eig;
    a.margin = min_eig;
    a.verdict = min_eig >= -1e-9 ? Verdict::holds : Verdict::violated;
    out.push_back(a);

    // (b) tilted second-order correlation against 2 Delta C with the
    // closed-form C; applicable for theta below 1 - sqrt(beta gamma)
    BoundReport bb;
    bb.name = "second-order-vs-2DeltaC(pinning " + std::to_string(k) + ")";
    if (theta <= 1 - root && root > 0) {
      SpinSystem tilted_e(sys.g, edge_tilt(sys.params, 1.0 / (1 - theta)), pn);
      DistTable pi = enumerate_dist(tilted_e);
      double lmax =
          lambda_max_event_correlation(pi, EventFamily::oriented_edge_10(sys.g, 1.0), true);
      double c_formula = 1 + Delta * (1 - root) / ((Delta - 1) * root * theta);
      bb.formula_value = 2 * Delta * c_formula;
      bb.measured_value = lmax;
      bb.margin = bb.formula_value - lmax;
      bb.verdict = lmax <= bb.formula_value + 1e-9 ? Verdict::holds : Verdict::violated;
    } else {
      bb.verdict = Verdict::not_applicable;
    }
    out.push_back(bb);
  }
  return out;
}

namespace {

// integrand after substituting s = (1-t) beta:
// min( 2/(delta^2 (s-1)), 6 Delta / (e delta^3 s) ) on s in (1, beta]
double sw_rate_integrand(double s, int Delta, double delta) {
  double a = 2.0 / (delta * delta * (s - 1));
  double b = 6.0 * Delta / (std::exp(1.0) * delta * delta * delta * s);
  return std::min(a, b);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fb, double fm, double eps, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  double left = (m - a) / 6 * (fa + 4 * flm + fm);
  double right = (b - m) / 6 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15 * eps)
    return left + right + (left + right - whole) / 15;
  return adaptive_simpson(f, a, m, fa, fm, flm, eps / 2, depth - 1) +
         adaptive_simpson(f, m, b, fm, fb, frm, eps / 2, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double eps) {
  if (b <= a) return 0;
  double m = 0.5 * (a + b);
  return adaptive_simpson(f, a, b, f(a), f(b), f(m), eps, 48);
}

}  // namespace

double sw_stability_integral(double beta, int Delta, double delta) {
  require(beta >= 1, Err::NotFerromagnetic, "needs beta >= 1");
  require(delta > 0 && delta <= 1, Err::DeltaOutOfRange, "delta in (0,1]");
  if (beta == 1) return 0;
  double e = std::exp(1.0);
  // crossover where both rates agree: s* = 3 Delta / (3 Delta - e delta)
  double s_star = 3.0 * Delta / (3.0 * Delta - e * delta);
  double i = 0;
  double s_mid = std::min(beta, s_star);
  i += 6.0 * Delta / (e * delta * delta * delta) * std::log(s_mid);
  if (beta > s_star)
    i += 2.0 / (delta * delta) * std::log((beta - 1) / (s_star - 1));
  return i;
}

double sw_stability_integral_quadrature(double beta, int Delta, double delta, double abs_tol) {
  require(beta >= 1, Err::NotFerromagnetic, "needs beta >= 1");
  if (beta == 1) return 0;
  // the crude rate caps the integrand near s = 1, so the integral is proper
  return integrate([&](double s) { return sw_rate_integrand(s, Delta, delta); }, 1.0, beta,
                   abs_tol);
}

double sw_gap_lower_bound(double beta, double lambda, int Delta, double delta) {
  require(lambda <= 1 - delta + 1e-12, Err::LambdaTooLarge, "needs lambda <= 1 - delta");
  double i = sw_stability_integral(beta, Delta, delta);
  return 0.5 * std::exp(-i);
}

double edge_field_R_bound(const SpinParams& p, int Delta, int n) {
  require(p.beta > 0, Err::HardConstraint, "needs beta > 0");
  UniquenessReport rep = uniqueness(p, Delta - 1);
  require(std::abs(rep.slack) <= 1e-6, Err::NotCritical, "needs critically (Delta-1)-unique");
  double bg = p.beta * p.gamma;
  double root = std::sqrt(bg);
  double expo = 2.0 * Delta * Delta * (1 - root) / ((Delta - 1) * root);
  return std::pow(bg, -Delta) * std::pow(std::exp(1.0) * n, expo);
}

BoundReport marginal_bound_check(const SpinSystem& sys, const std::vector<int>& mono_edge_ids,
                                 double delta) {
  const SpinParams& p = sys.params;
  int Delta = std::max(sys.g.max_degree, 1);
  require(p.beta == p.gamma, Err::InputsOutOfRegime, "Ising system required");
  double width = delta * delta / (double(Delta) * Delta);
  require(p.beta >= 1 - width - 1e-12 && p.beta <= 1 + width + 1e-12, Err::RegimeViolation,
          "edge activity outside the near-unit regime");
  require(p.lambda <= 1 - delta + 1e-12, Err::RegimeViolation, "needs lambda <= 1 - delta");

  Pinning pn = sys.pin;
  for (int e : mono_edge_ids) {
    require(e >= 0 && e < sys.g.m(), Err::EdgeNotInGraph, "mono edge id");
    pn.mono_edges.push_back(sys.g.edges[size_t(e)]);
  }
  SpinSystem cond(sys.g, p, pn);
  DistTable mu = enumerate_dist(cond);
  auto marg = mu.marginals();

  uint64_t mask = 0;
  for (int e : mono_edge_ids) mask |= uint64_t(1) << e;
  auto label = component_labels(sys.g, mask);
  std::vector<int> comp_size(size_t(sys.g.n), 0);
  for (int v = 0; v < sys.g.n; ++v) comp_size[size_t(label[size_t(v)])]++;

  BoundReport rep;
  rep.name = "component-marginal-ratio-bound";
  rep.margin = std::numeric_limits<double>::infinity();
  rep.verdict = Verdict::holds;
  bool any = false;
  for (int u = 0; u < sys.g.n; ++u) {
    double m = marg[size_t(u)];
    if (m <= 1e-14 || m >= 1 - 1e-14) continue;  // spin fixed by conditioning
    any = true;
    int k_u = comp_size[size_t(label[size_t(u)])];
    double ratio = m / (1 - m);
    double bound = std::pow(1 + delta, -k_u);
    if (bound - ratio < rep.margin) {
      rep.margin = bound - ratio;
      rep.measured_value = ratio;
      rep.formula_value = bound;
    }
    if (ratio > bound + 1e-12) rep.verdict = Verdict::violated;
  }
  if (!any) rep.verdict = Verdict::not_applicable;
  return rep;
}

double glauber_critical_alpha(const SpinParams& p) {
  return p.beta > 0 ? 2 + 1 / p.beta : 2 + p.gamma + 1 / p.gamma;
}

double edge_field_exponent_c(double beta, double gamma, int Delta) {
  double root = std::sqrt(beta * gamma);
  require(root > 0, Err::HardConstraint, "needs beta > 0");
  return 2.0 * Delta * Delta * (1 - root) / ((Delta - 1) * root);
}

double via_edge_k(int Delta, double bar_beta) { return Delta * (1 - bar_beta); }

double via_edge_epsilon(int Delta, double bar_beta) {
  double k = via_edge_k(Delta, bar_beta);
  return 2 * k * ((k + 1) * Delta - k) / ((Delta - 1) * (Delta - k));
}

double via_vertex_kappa(int Delta, double bar_beta) {
  double beta_c = double(Delta - 2) / Delta;
  require(bar_beta < beta_c, Err::BarBetaTooLarge, "needs bar_beta < (Delta-2)/Delta");
  return std::sqrt((1 - bar_beta * bar_beta) / (beta_c * beta_c - bar_beta * bar_beta));
}

double sw_entropy_integral(double beta, int Delta, double delta) {
  require(delta > 0 && delta < 0.01, Err::InputsOutOfRegime,
          "entropy-route constant defined only for delta in (0, 0.01)");
  require(beta >= 1, Err::NotFerromagnetic, "needs beta >= 1");
  if (beta == 1) return 0;
  double crude = 321.0 * Delta * Delta / std::pow(delta, 4);
  double s_split = std::min(beta, 1 + delta * delta / (double(Delta) * Delta));
  // integrand min(2/(delta^2 (s-1)), crude/s) on (1, s_split], then the first
  // rate alone on (s_split, beta]
  double i = integrate(
      [&](double s) {
        double a = s > 1 ? 2.0 / (delta * delta * (s - 1)) : crude;
        return std::min(a, crude / s);
      },
      1.0, s_split, 1e-10);
  if (beta > s_split)
    i += 2.0 / (delta * delta) * std::log((beta - 1) / (s_split - 1));
  return i;
}

BoundReport mixing_bound_evaluator(MixingWhich which, const MixingInputs& in) {
  BoundReport rep;
  rep.verdict = Verdict::not_applicable;  // asymptotic statements carry O(.) constants
  switch (which) {
    case MixingWhich::glauber_critical: {
      SpinParams p(in.beta, in.gamma, in.lambda);
      double alpha = glauber_critical_alpha(p);
      double expo = 2 * std::sqrt(2.0) + 4;
      rep.name = "glauber-critical-mixing";
      rep.formula_value = (std::log(in.lambda + 1 / in.lambda) + in.Delta * std::log(alpha)) *
                          std::pow(double(in.n), expo);
      rep.measured_value = alpha;
      break;
    }
    case MixingWhich::edge_field_mixing: {
      double c = edge_field_exponent_c(in.beta, in.gamma, in.Delta);
      double bg = in.beta * in.gamma;
      rep.name = "edge-field-critical-mixing";
      rep.measured_value = c;
      rep.formula_value = (std::log(in.lambda + 1 / in.lambda) +
                           in.Delta * std::log(2 + 1 / in.beta)) *
                          std::pow(bg, -in.Delta) * std::exp(c) * std::pow(double(in.n), c + 1);
      break;
    }
    case MixingWhich::glauber_via_edge: {
      double k = via_edge_k(in.Delta, in.bar_beta);
      double eps = via_edge_epsilon(in.Delta, in.bar_beta);
      rep.name = "glauber-critical-via-edge-tilting";
      rep.measured_value = k;
      rep.formula_value = 2 * k + 2 + eps;  // polynomial exponent
      break;
    }
    case MixingWhich::glauber_via_vertex: {
      double kappa = via_vertex_kappa(in.Delta, in.bar_beta);
      rep.name = "glauber-critical-via-vertex-tilting";
      rep.measured_value = kappa;
      rep.formula_value = 2 * kappa + 2;  // polynomial exponent
      break;
    }
    case MixingWhich::sw_mixing: {
      double i = sw_entropy_integral(in.beta, in.Delta, in.delta);
      rep.name = "swendsen-wang-mixing";
      rep.measured_value = i;
      rep.formula_value = std::pow(in.beta * in.Delta, 4.0 / (in.delta * in.delta));
      break;
    }
  }
  return rep;
}

}  // namespace spinlab
