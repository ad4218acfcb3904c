#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "spinlab/exact_oracle.hpp"

namespace spinlab {

ChainSpec ChainSpec::glauber(uint64_t seed) {
  ChainSpec c;
  c.kind = Kind::glauber;
  c.seed = seed;
  return c;
}

ChainSpec ChainSpec::vertex_field(double theta, uint64_t seed) {
  ChainSpec c;
  c.kind = Kind::vertex_field;
  c.theta = theta;
  c.seed = seed;
  return c;
}

ChainSpec ChainSpec::edge_field(double theta, uint64_t seed) {
  ChainSpec c;
  c.kind = Kind::edge_field;
  c.theta = theta;
  c.seed = seed;
  return c;
}

ChainSpec ChainSpec::event_field(EventFamily family, uint64_t seed) {
  ChainSpec c;
  c.kind = Kind::event_field;
  c.family = std::move(family);
  c.seed = seed;
  return c;
}

ChainSpec ChainSpec::swendsen_wang(uint64_t seed) {
  ChainSpec c;
  c.kind = Kind::swendsen_wang;
  c.seed = seed;
  return c;
}

std::string ChainSpec::name() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::glauber:
      os << "glauber";
      break;
    case Kind::vertex_field:
      os << "vertex_field(" << theta << ")";
      break;
    case Kind::edge_field:
      os << "edge_field(" << theta << ")";
      break;
    case Kind::event_field:
      os << "event_field(" << family.size() << " events)";
      break;
    case Kind::swendsen_wang:
      os << "swendsen_wang";
      break;
  }
  return os.str();
}

int TransitionMatrix::index_of(uint32_t state) const {
  auto it = std::lower_bound(states.begin(), states.end(), state);
  if (it == states.end() || *it != state) return -1;
  return int(it - states.begin());
}

namespace {

void check_field_tilt(double theta) {
  require(theta > 0 && theta < 1, Err::InvalidTilt, "field tilt must lie in (0,1)");
}

struct Builder {
  const SpinSystem& sys;
  const DistTable& mu;
  const std::vector<uint32_t>& supp;
  std::vector<int> index;  // mask -> support index

  Builder(const SpinSystem& s, const DistTable& m) : sys(s), mu(m), supp(m.support()) {
    index.assign(m.size(), -1);
    for (size_t i = 0; i < supp.size(); ++i) index[supp[i]] = int(i);
  }
  int dim() const { return int(supp.size()); }
};

void build_glauber(const Builder& b, Matrix& rows) {
  int n = b.sys.n();
#pragma omp parallel for schedule(static)
  for (int i = 0; i < b.dim(); ++i) {
    uint32_t s = b.supp[size_t(i)];
    for (int v = 0; v < n; ++v) {
      uint32_t s0 = s & ~(1u << v), s1 = s | (1u << v);
      double w0 = b.mu.prob(s0), w1 = b.mu.prob(s1);
      double z = w0 + w1;
      if (b.index[s0] >= 0) rows(i, b.index[s0]) += w0 / (z * n);
      if (b.index[s1] >= 0) rows(i, b.index[s1]) += w1 / (z * n);
    }
  }
}

// Down: drop each occupied vertex with probability theta. Up: resample from
// (theta * mu) pinned to 1 on the kept set.
void build_vertex_field(const Builder& b, double theta, Matrix& rows) {
  check_field_tilt(theta);
  int dim = b.dim();
  std::vector<double> w(static_cast<size_t>(dim));  // mu(tau) theta^{|tau|}
  for (int j = 0; j < dim; ++j)
    w[size_t(j)] = b.mu.prob(b.supp[size_t(j)]) * std::pow(theta, popcount(b.supp[size_t(j)]));
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < dim; ++i) {
    uint32_t ones = b.supp[size_t(i)];
    int total_ones = popcount(ones);
    uint32_t t = ones;
    while (true) {
      int kept = popcount(t);
      double wt = std::pow(1 - theta, kept) * std::pow(theta, total_ones - kept);
      double z = 0;
      for (int j = 0; j < dim; ++j)
        if ((b.supp[size_t(j)] & t) == t) z += w[size_t(j)];
      for (int j = 0; j < dim; ++j)
        if ((b.supp[size_t(j)] & t) == t) rows(i, j) += wt * w[size_t(j)] / z;
      if (t == 0) break;
      t = (t - 1) & ones;
    }
  }
}

// Down: drop each non-monochromatic edge with probability theta; pin the
// vertices incident to the kept edges. Up: resample from (1/theta) tensor mu
// under that pinning.
void build_edge_field(const Builder& b, double theta, Matrix& rows) {
  check_field_tilt(theta);
  require(b.sys.g.m() <= 20, Err::TooLarge, "edge-field row enumeration needs |E| <= 20");
  int dim = b.dim();
  int me = b.sys.g.m();
  std::vector<int> mono(static_cast<size_t>(dim));
  for (int j = 0; j < dim; ++j) mono[size_t(j)] = count_mono_edges(b.sys.g, b.supp[size_t(j)]);
  // mu(tau) theta^{-m(tau)}, normalized by theta^{|E|} to stay bounded
  std::vector<double> w(static_cast<size_t>(dim));
  for (int j = 0; j < dim; ++j)
    w[size_t(j)] = b.mu.prob(b.supp[size_t(j)]) * std::pow(theta, me - mono[size_t(j)]);
  std::vector<uint32_t> edge_vmask(static_cast<size_t>(me));
  for (int e = 0; e < me; ++e)
    edge_vmask[size_t(e)] =
        (1u << b.sys.g.edges[size_t(e)].first) | (1u << b.sys.g.edges[size_t(e)].second);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < dim; ++i) {
    uint32_t s = b.supp[size_t(i)];
    std::vector<int> nonmono;
    for (int e = 0; e < me; ++e) {
      auto [u, v] = b.sys.g.edges[size_t(e)];
      if (((s >> u) & 1u) != ((s >> v) & 1u)) nonmono.push_back(e);
    }
    int nn = int(nonmono.size());
    for (uint32_t r = 0; r < (1u << nn); ++r) {
      int kept = popcount(r);
      double wr = std::pow(1 - theta, kept) * std::pow(theta, nn - kept);
      uint32_t vmask = 0;
      for (int k = 0; k < nn; ++k)
        if (r >> k & 1u) vmask |= edge_vmask[size_t(nonmono[size_t(k)])];
      uint32_t vals = s & vmask;
      double z = 0;
      for (int j = 0; j < dim; ++j)
        if ((b.supp[size_t(j)] & vmask) == vals) z += w[size_t(j)];
      for (int j = 0; j < dim; ++j)
        if ((b.supp[size_t(j)] & vmask) == vals) rows(i, j) += wr * w[size_t(j)] / z;
    }
  }
}

// Generic event-field dynamics: drop each occurring event A with probability
// theta_A, then resample from mu tilted by prod theta_A^{1[. in A]}
// conditioned on every kept event occurring.
void build_event_field(const Builder& b, const EventFamily& fam, Matrix& rows) {
  fam.validate();
  require(fam.size() <= 24, Err::TooLarge, "event-field row enumeration needs <= 24 events");
  int dim = b.dim();
  std::vector<uint64_t> occ(static_cast<size_t>(dim));
  std::vector<double> w(static_cast<size_t>(dim));
  for (int j = 0; j < dim; ++j) {
    occ[size_t(j)] = fam.occurring_mask(b.supp[size_t(j)]);
    w[size_t(j)] = b.mu.prob(b.supp[size_t(j)]) * fam.tilt_product(b.supp[size_t(j)]);
  }
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < dim; ++i) {
    uint64_t o = occ[size_t(i)];
    uint64_t t = o;
    while (true) {
      double wt = 1.0;
      for (size_t a = 0; a < fam.size(); ++a)
        if (o >> a & 1) wt *= (t >> a & 1) ? (1 - fam.tilts[a]) : fam.tilts[a];
      if (wt > 0) {
        double z = 0;
        for (int j = 0; j < dim; ++j)
          if ((occ[size_t(j)] & t) == t) z += w[size_t(j)];
        for (int j = 0; j < dim; ++j)
          if ((occ[size_t(j)] & t) == t) rows(i, j) += wt * w[size_t(j)] / z;
      }
      if (t == 0) break;
      t = (t - 1) & o;
    }
  }
}

// D_{1->p} on monochromatic edges followed by U_{p->1} recoloring components.
void build_swendsen_wang(const Builder& b, Matrix& rows) {
  const SpinParams& p = b.sys.params;
  require(p.beta == p.gamma && p.beta >= 1, Err::NotFerromagnetic,
          "Swendsen-Wang needs beta = gamma >= 1");
  require(p.lambda <= 1, Err::LambdaTooLarge, "Swendsen-Wang needs lambda in [0,1]");
  require(b.sys.pin.empty(), Err::NotFerromagnetic, "Swendsen-Wang runs unconditioned");
  require(b.sys.g.m() <= 20, Err::TooLarge, "Swendsen-Wang row enumeration needs |E| <= 20");
  double prob_keep = 1.0 - 1.0 / p.beta;
  const Graph& g = b.sys.g;
  int n = g.n;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < b.dim(); ++i) {
    uint32_t s = b.supp[size_t(i)];
    std::vector<int> mono;
    for (int e = 0; e < g.m(); ++e) {
      auto [u, v] = g.edges[size_t(e)];
      if (((s >> u) & 1u) == ((s >> v) & 1u)) mono.push_back(e);
    }
    int nm = int(mono.size());
    for (uint32_t t = 0; t < (1u << nm); ++t) {
      int kept = popcount(t);
      double wt = std::pow(prob_keep, kept) * std::pow(1 - prob_keep, nm - kept);
      if (wt == 0) continue;
      uint64_t edge_mask = 0;
      for (int k = 0; k < nm; ++k)
        if (t >> k & 1u) edge_mask |= uint64_t(1) << mono[size_t(k)];
      auto label = component_labels(g, edge_mask);
      std::vector<uint32_t> comp_mask;
      std::vector<double> q1;
      std::vector<uint32_t> root_seen(size_t(n), 0);
      for (int v = 0; v < n; ++v) {
        int r = label[size_t(v)];
        if (!root_seen[size_t(r)]) {
          root_seen[size_t(r)] = uint32_t(comp_mask.size()) + 1;
          comp_mask.push_back(0);
          q1.push_back(0);
        }
        comp_mask[root_seen[size_t(r)] - 1] |= 1u << v;
      }
      for (size_t c = 0; c < comp_mask.size(); ++c) {
        double lam_pow = std::pow(p.lambda, popcount(comp_mask[c]));
        q1[c] = lam_pow / (1 + lam_pow);
      }
      int nc = int(comp_mask.size());
      // enumerate component colorings
      for (uint32_t a = 0; a < (1u << nc); ++a) {
        double pr = wt;
        uint32_t tau = 0;
        for (int c = 0; c < nc; ++c) {
          if (a >> c & 1u) {
            pr *= q1[size_t(c)];
            tau |= comp_mask[size_t(c)];
          } else {
            pr *= 1 - q1[size_t(c)];
          }
        }
        if (pr == 0) continue;
        int j = b.index[tau];
        if (j >= 0) rows(i, j) += pr;
      }
    }
  }
}

}  // namespace

TransitionMatrix transition_matrix(const SpinSystem& sys, const ChainSpec& chain, int state_cap) {
  DistTable mu = enumerate_dist(sys);
  Builder b(sys, mu);
  require(b.dim() <= state_cap, Err::TooLarge,
          "support " + std::to_string(b.dim()) + " exceeds cap " + std::to_string(state_cap));
  TransitionMatrix out;
  out.dim = b.dim();
  out.states = b.supp;
  out.chain = chain.name();
  out.rows = Matrix::Zero(b.dim(), b.dim());
  out.pi.resize(b.dim());
  for (int i = 0; i < b.dim(); ++i) out.pi[i] = mu.prob(b.supp[size_t(i)]);

  switch (chain.kind) {
    case ChainSpec::Kind::glauber:
      build_glauber(b, out.rows);
      break;
    case ChainSpec::Kind::vertex_field:
      build_vertex_field(b, chain.theta, out.rows);
      break;
    case ChainSpec::Kind::edge_field:
      build_edge_field(b, chain.theta, out.rows);
      break;
    case ChainSpec::Kind::event_field:
      build_event_field(b, chain.family, out.rows);
      break;
    case ChainSpec::Kind::swendsen_wang:
      build_swendsen_wang(b, out.rows);
      break;
  }
  return out;
}

GapResult spectral_gap(const TransitionMatrix& p) {
  int dim = p.dim;
  if (dim == 1) return {1.0, 1.0};
  double worst = 0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      worst = std::max(worst, std::abs(p.pi[i] * p.rows(i, j) - p.pi[j] * p.rows(j, i)));
  require(worst <= 1e-9, Err::NotReversible,
          "detailed balance violated by " + std::to_string(worst));
  Matrix sym(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) sym(i, j) = p.rows(i, j) * std::sqrt(p.pi[i] / p.pi[j]);
  Vector ev = symmetric_eigenvalues(sym);
  double gap = 1.0 - ev[dim - 2];
  double abs_gap = 1.0 - std::max(std::abs(ev[0]), std::abs(ev[dim - 2]));
  return {gap, abs_gap};
}

namespace {

double worst_tv(const Matrix& power, const Vector& pi) {
  int dim = int(power.rows());
  double worst = 0;
  for (int i = 0; i < dim; ++i) {
    double s = 0;
    for (int j = 0; j < dim; ++j) s += std::abs(power(i, j) - pi[j]);
    worst = std::max(worst, 0.5 * s);
  }
  return worst;
}

}  // namespace

long exact_mixing_time(const TransitionMatrix& p, double eps, long step_cap) {
  int dim = p.dim;
  {
    double d0 = 0;
    for (int i = 0; i < dim; ++i) d0 = std::max(d0, 1.0 - p.pi[i]);
    if (d0 <= eps) return 0;
  }
  if (worst_tv(p.rows, p.pi) <= eps) return 1;
  // binary lifting on the monotone worst-start distance
  std::vector<Matrix> pow2 = {p.rows};
  std::vector<long> len = {1};
  Matrix tmp;
  while (true) {
    require(2 * len.back() <= step_cap, Err::Nonconvergent,
            "mixing time exceeds cap " + std::to_string(step_cap));
    matmul(pow2.back(), pow2.back(), tmp);
    pow2.push_back(tmp);
    len.push_back(2 * len.back());
    if (worst_tv(pow2.back(), p.pi) <= eps) break;
  }
  // largest t with distance > eps, assembled high bit to low
  size_t top = pow2.size() - 1;
  Matrix cur = pow2[top - 1];
  long t = len[top - 1];
  for (size_t k = top - 1; k-- > 0;) {
    matmul(cur, pow2[k], tmp);
    if (worst_tv(tmp, p.pi) > eps) {
      cur = tmp;
      t += len[k];
    }
  }
  return t + 1;
}

double conservation_constant_variance(const TransitionMatrix& p) {
  bool identity = true;
  for (int i = 0; i < p.dim && identity; ++i)
    for (int j = 0; j < p.dim; ++j)
      if (std::abs(p.rows(i, j) - (i == j ? 1.0 : 0.0)) > 1e-14) {
        identity = false;
        break;
      }
  if (identity) return 1.0;  // conditioning on Y1 itself
  double gap = spectral_gap(p).gap;
  require(gap > 1e-13, Err::ZeroGap, "down-up chain has zero spectral gap");
  return 1.0 / gap;
}

}  // namespace spinlab
