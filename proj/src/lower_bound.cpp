#include "spinlab/lower_bound.hpp"

#include <cmath>

#include "spinlab/tree_analysis.hpp"

namespace spinlab {

double truncated_lower_sum(double delta, int Delta, int r) {
  double s = 0;
  for (int i = 1; i <= r; ++i)
    s += Delta * std::pow(double(Delta - 1), i - 1) * std::pow((1 - delta) / (Delta - 1), i);
  return s;
}

LowerBoundRun run_lower_bound_experiment(const Graph& g, double beta, double gamma,
                                         double slack_target, int site_cap) {
  require(g.n <= site_cap, Err::TooLarge, "enumeration cap");
  std::vector<int> side;
  require(is_bipartite(g, &side) && is_regular(g) && g.max_degree >= 3, Err::NotBipartiteRegular,
          "needs a bipartite regular graph of degree >= 3");
  int Delta = g.max_degree;

  LowerBoundRun run;
  run.girth = girth(g);
  double lambda = lambda_for_slack(beta, gamma, Delta - 1, slack_target);
  run.params = SpinParams(beta, gamma, lambda);
  run.slack = uniqueness(run.params, Delta - 1).slack;
  run.ceiling = double(Delta) * (1 - run.slack) / ((Delta - 1) * run.slack);
  run.r = run.girth / 2 - 1;
  run.truncated_sum = truncated_lower_sum(run.slack, Delta, run.r);

  SpinSystem sys(g, run.params);
  DistTable mu = enumerate_dist(sys, site_cap);
  run.lambda_max_measured = lambda_max_influence(mu);

  auto m = pair_moments(mu);
  Matrix psi = influence_matrix(mu);

  // bipartite +-1 test vector alpha on Psi = D^{-1}(Cov - D)
  {
    double num = 0, den = 0;
    for (int u = 0; u < g.n; ++u) {
      double du = m.p1[u] * (1 - m.p1[u]);
      den += du;
      for (int v = 0; v < g.n; ++v) {
        if (u == v) continue;
        double su = side[size_t(u)] ? -1.0 : 1.0;
        double sv = side[size_t(v)] ? -1.0 : 1.0;
        num += su * sv * (m.p11(u, v) - m.p1[u] * m.p1[v]);
      }
    }
    run.test_vector_quotient = num / den;
  }

  // influence magnitudes grouped by graph distance
  int max_dist = 0;
  std::vector<std::vector<int>> dist(size_t(g.n));
  for (int u = 0; u < g.n; ++u) {
    dist[size_t(u)] = bfs_distances(g, u);
    for (int v = 0; v < g.n; ++v) max_dist = std::max(max_dist, dist[size_t(u)][size_t(v)]);
  }
  for (int d = 1; d <= max_dist; ++d) {
    DistanceClass cls;
    cls.dist = d;
    cls.predicted = std::pow((1 - run.slack) / (Delta - 1), d);
    double sum = 0, mn = 1e300, mx = 0;
    long count = 0;
    for (int u = 0; u < g.n; ++u)
      for (int v = 0; v < g.n; ++v) {
        if (u == v || dist[size_t(u)][size_t(v)] != d) continue;
        double a = std::abs(psi(u, v));
        sum += a;
        mn = std::min(mn, a);
        mx = std::max(mx, a);
        ++count;
      }
    if (count == 0) continue;
    cls.mean_abs_influence = sum / count;
    cls.min_abs_influence = mn;
    cls.max_abs_influence = mx;
    run.per_distance.push_back(cls);
  }
  return run;
}

}  // namespace spinlab
