#include "spinlab/transport.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "spinlab/spin_model.hpp"

namespace spinlab {

namespace {

constexpr double kMassTol = 1e-15;

// Edge-list min-cost max-flow with SPFA shortest paths. Capacities are real
// masses; costs are the integer Hamming distances, so the optimum is exact up
// to mass rounding.
struct MinCostFlow {
  struct Arc {
    int to;
    double cap;
    double cost;
    int rev;
  };
  std::vector<std::vector<Arc>> g;

  explicit MinCostFlow(int n) : g(size_t(n)) {}

  void add(int u, int v, double cap, double cost) {
    g[size_t(u)].push_back({v, cap, cost, int(g[size_t(v)].size())});
    g[size_t(v)].push_back({u, 0.0, -cost, int(g[size_t(u)].size()) - 1});
  }

  // returns total cost of a max flow from s to t
  double solve(int s, int t) {
    const int n = int(g.size());
    const double inf = std::numeric_limits<double>::infinity();
    double total_cost = 0;
    while (true) {
      std::vector<double> dist(size_t(n), inf);
      std::vector<int> pv(size_t(n), -1), pe(size_t(n), -1);
      std::vector<char> inq(size_t(n), 0);
      std::deque<int> q{s};
      dist[size_t(s)] = 0;
      inq[size_t(s)] = 1;
      while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        inq[size_t(u)] = 0;
        for (int k = 0; k < int(g[size_t(u)].size()); ++k) {
          const Arc& a = g[size_t(u)][size_t(k)];
          if (a.cap <= kMassTol) continue;
          double nd = dist[size_t(u)] + a.cost;
          if (nd < dist[size_t(a.to)] - 1e-13) {
            dist[size_t(a.to)] = nd;
            pv[size_t(a.to)] = u;
            pe[size_t(a.to)] = k;
            if (!inq[size_t(a.to)]) {
              inq[size_t(a.to)] = 1;
              q.push_back(a.to);
            }
          }
        }
      }
      if (dist[size_t(t)] == inf) break;
      double push = inf;
      for (int v = t; v != s; v = pv[size_t(v)])
        push = std::min(push, g[size_t(pv[size_t(v)])][size_t(pe[size_t(v)])].cap);
      if (push <= kMassTol) break;
      for (int v = t; v != s; v = pv[size_t(v)]) {
        Arc& a = g[size_t(pv[size_t(v)])][size_t(pe[size_t(v)])];
        a.cap -= push;
        g[size_t(v)][size_t(a.rev)].cap += push;
        total_cost += push * a.cost;
      }
    }
    return total_cost;
  }
};

}  // namespace

double w1_hamming(const std::vector<uint32_t>& sa, const std::vector<double>& ma,
                  const std::vector<uint32_t>& sb, const std::vector<double>& mb) {
  require(sa.size() == ma.size() && sb.size() == mb.size(), Err::TooLarge,
          "state/mass size mismatch");
  int na = int(sa.size()), nb = int(sb.size());
  // nodes: 0 = source, 1..na = left, na+1..na+nb = right, na+nb+1 = sink
  MinCostFlow mcf(na + nb + 2);
  int src = 0, snk = na + nb + 1;
  for (int i = 0; i < na; ++i) mcf.add(src, 1 + i, ma[size_t(i)], 0);
  for (int j = 0; j < nb; ++j) mcf.add(1 + na + j, snk, mb[size_t(j)], 0);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j)
      mcf.add(1 + i, 1 + na + j, 2.0, double(popcount(sa[size_t(i)] ^ sb[size_t(j)])));
  return mcf.solve(src, snk);
}

double w1_hamming(const DistTable& a, const DistTable& b) {
  std::vector<uint32_t> sa, sb;
  std::vector<double> ma, mb;
  for (uint32_t s : a.support()) {
    sa.push_back(s);
    ma.push_back(a.prob(s));
  }
  for (uint32_t s : b.support()) {
    sb.push_back(s);
    mb.push_back(b.prob(s));
  }
  return w1_hamming(sa, ma, sb, mb);
}

}  // namespace spinlab
