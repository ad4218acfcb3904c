#include "spinlab/exact_oracle.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <unordered_map>

#include "spinlab/parallel.hpp"

namespace spinlab {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kInteriorTol = 1e-12;
}  // namespace

int max_states_cap() {
  if (const char* env = std::getenv("SPINLAB_MAX_STATES")) {
    long v = std::atol(env);
    if (v > 0) return int(std::min<long>(v, 1l << 30));
  }
  return 1 << 20;
}

DistTable enumerate_dist(const SpinSystem& sys, int site_cap) {
  require(sys.n() <= site_cap, Err::TooLarge,
          "n = " + std::to_string(sys.n()) + " exceeds cap " + std::to_string(site_cap));
  require((1l << sys.n()) <= max_states_cap(), Err::TooLarge, "SPINLAB_MAX_STATES exceeded");
  uint64_t total = uint64_t(1) << sys.n();
  std::vector<double> lw(total);
#pragma omp parallel for schedule(static)
  for (int64_t s = 0; s < int64_t(total); ++s) lw[uint64_t(s)] = sys.log_weight(Config(s));
  return make_dist_from_log_weights(sys.n(), DomainKind::vertices, std::move(lw));
}

DistTable enumerate_dist_reference(const SpinSystem& sys, int site_cap) {
  require(sys.n() <= site_cap, Err::TooLarge, "site cap");
  uint64_t total = uint64_t(1) << sys.n();
  double mx = kNegInf;
  std::vector<double> lw(total);
  for (uint64_t s = 0; s < total; ++s) {
    lw[s] = sys.log_weight(Config(s));
    mx = std::max(mx, lw[s]);
  }
  require(mx > kNegInf, Err::EmptySupport, "no feasible configuration");
  double z = 0;
  for (uint64_t s = 0; s < total; ++s)
    if (lw[s] > kNegInf) z += std::exp(lw[s] - mx);
  DistTable d;
  d.n = sys.n();
  d.kind = DomainKind::vertices;
  d.log_z = mx + std::log(z);
  d.probs.assign(total, 0.0);
  for (uint64_t s = 0; s < total; ++s)
    if (lw[s] > kNegInf) d.probs[s] = std::exp(lw[s] - mx) / z;
  return d;
}

DistTable enumerate_rc(const Graph& g, const RandomClusterParams& rc, uint64_t pinned_mask) {
  require(g.m() <= 24, Err::TooLarge, "random-cluster enumeration needs |E| <= 24");
  uint64_t total = uint64_t(1) << g.m();
  std::vector<double> lw(total, kNegInf);
#pragma omp parallel for schedule(static)
  for (int64_t s = 0; s < int64_t(total); ++s) {
    uint64_t mask = uint64_t(s);
    if ((mask & pinned_mask) == pinned_mask) lw[mask] = rc_weight_log(rc, g, mask);
  }
  return make_dist_from_log_weights(g.m(), DomainKind::edges, std::move(lw));
}

namespace {

PairMoments accumulate_pair_moments(const DistTable& dist, bool parallel) {
  int n = dist.n;
  const auto& supp = dist.support();
  auto block = [&](size_t lo, size_t hi) {
    Matrix acc = Matrix::Zero(n, n);
    for (size_t idx = lo; idx < hi; ++idx) {
      uint32_t s = supp[idx];
      double p = dist.prob(s);
      for (int i = 0; i < n; ++i) {
        if (!(s >> i & 1u)) continue;
        acc(i, i) += p;
        for (int j = i + 1; j < n; ++j)
          if (s >> j & 1u) {
            acc(i, j) += p;
            acc(j, i) += p;
          }
      }
    }
    return acc;
  };
  Matrix total = Matrix::Zero(n, n);
  if (!parallel) {
    total = block(0, supp.size());
  } else {
    int nblocks = kReductionBlocks;
    if (supp.size() < size_t(nblocks)) nblocks = std::max<int>(1, int(supp.size()));
    std::vector<Matrix> partial(static_cast<size_t>(nblocks));
#pragma omp parallel for schedule(static)
    for (int b = 0; b < nblocks; ++b) {
      size_t lo = supp.size() * size_t(b) / size_t(nblocks);
      size_t hi = supp.size() * size_t(b + 1) / size_t(nblocks);
      partial[size_t(b)] = block(lo, hi);
    }
    for (int b = 0; b < nblocks; ++b) total += partial[size_t(b)];
  }
  PairMoments m;
  m.p11 = total;
  m.p1 = total.diagonal();
  return m;
}

}  // namespace

PairMoments pair_moments(const DistTable& dist) { return accumulate_pair_moments(dist, true); }
PairMoments pair_moments_reference(const DistTable& dist) {
  return accumulate_pair_moments(dist, false);
}

PairMoments event_moments(const DistTable& dist, const EventFamily& fam) {
  int k = int(fam.size());
  Matrix acc = Matrix::Zero(k, k);
  const auto& supp = dist.support();
  std::vector<uint64_t> occ(supp.size());
#pragma omp parallel for schedule(static)
  for (int64_t i = 0; i < int64_t(supp.size()); ++i)
    occ[uint64_t(i)] = fam.occurring_mask(supp[uint64_t(i)]);
  for (size_t idx = 0; idx < supp.size(); ++idx) {
    double p = dist.prob(supp[idx]);
    uint64_t m = occ[idx];
    for (int i = 0; i < k; ++i) {
      if (!(m >> i & 1)) continue;
      for (int j = i; j < k; ++j)
        if (m >> j & 1) {
          acc(i, j) += p;
          if (j != i) acc(j, i) += p;
        }
    }
  }
  PairMoments out;
  out.p11 = acc;
  out.p1 = acc.diagonal();
  return out;
}

Matrix influence_matrix(const DistTable& dist) {
  auto m = pair_moments(dist);
  int n = dist.n;
  Matrix psi = Matrix::Zero(n, n);
  for (int u = 0; u < n; ++u) {
    double pu = m.p1[u];
    if (pu <= kInteriorTol || pu >= 1 - kInteriorTol) continue;
    for (int v = 0; v < n; ++v) {
      if (v == u) continue;
      psi(u, v) = (m.p11(u, v) - pu * m.p1[v]) / (pu * (1 - pu));
    }
  }
  return psi;
}

double lambda_max_influence(const DistTable& dist) {
  // Psi = D^{-1}(Cov - D) with D = diag(p(1-p)); symmetric pencil route.
  auto m = pair_moments(dist);
  int n = dist.n;
  Matrix cov = m.p11 - m.p1 * m.p1.transpose();
  Vector d(n);
  for (int i = 0; i < n; ++i) {
    double p = m.p1[i];
    d[i] = (p > kInteriorTol && p < 1 - kInteriorTol) ? p * (1 - p) : 0.0;
  }
  Matrix a = cov;
  for (int i = 0; i < n; ++i) a(i, i) -= d[i];
  return lambda_max_pencil(a, d);
}

double total_influence(const DistTable& dist, int r) {
  Matrix psi = influence_matrix(dist);
  double s = 1.0;
  for (int v = 0; v < dist.n; ++v) s += std::abs(psi(r, v));
  return s;
}

namespace {

Matrix event_correlation(const DistTable& dist, const EventFamily& fam, bool literal_diagonal) {
  auto m = event_moments(dist, fam);
  int k = int(fam.size());
  Matrix out = Matrix::Zero(k, k);
  for (int a = 0; a < k; ++a) {
    double pa = m.p1[a];
    if (pa <= 0) continue;
    for (int b = 0; b < k; ++b) out(a, b) = m.p11(a, b) / pa - m.p1[b];
  }
  if (!literal_diagonal) out.diagonal().setZero();
  return out;
}

}  // namespace

Matrix second_order_correlation_matrix(const DistTable& dist, const Graph& g,
                                       bool literal_diagonal) {
  return event_correlation(dist, EventFamily::oriented_edge_10(g, 1.0), literal_diagonal);
}

Matrix sw_correlation_matrix(const DistTable& dist, const Graph& g, bool literal_diagonal) {
  return event_correlation(dist, EventFamily::edge_monochromatic(g, 1.0), literal_diagonal);
}

double lambda_max_event_correlation(const DistTable& dist, const EventFamily& fam,
                                    bool literal_diagonal) {
  auto m = event_moments(dist, fam);
  int k = int(fam.size());
  Matrix cov = m.p11 - m.p1 * m.p1.transpose();
  Vector d = m.p1;
  if (!literal_diagonal)
    for (int i = 0; i < k; ++i) cov(i, i) -= d[i] * (1 - d[i]);
  return lambda_max_pencil(cov, d);
}

double divergence(DivKind kind, const DistTable& nu, const DistTable& mu) {
  require(nu.n == mu.n, Err::NotAbsolutelyContinuous, "domain size mismatch");
  uint64_t total = nu.size();
  if (kind == DivKind::TV) {
    double s = 0;
    for (uint64_t i = 0; i < total; ++i) s += std::abs(nu.probs[i] - mu.probs[i]);
    return 0.5 * s;
  }
  double acc = 0;
  for (uint64_t i = 0; i < total; ++i) {
    double q = nu.probs[i], p = mu.probs[i];
    if (q == 0) continue;
    require(p > 0, Err::NotAbsolutelyContinuous, "nu not absolutely continuous w.r.t. mu");
    acc += kind == DivKind::chi2 ? q * q / p : q * std::log(q / p);
  }
  return kind == DivKind::chi2 ? acc - 1.0 : acc;
}

double at_variance_constant(const DistTable& dist, int support_cap) {
  const auto& supp = dist.support();
  require(int(supp.size()) <= support_cap, Err::TooLarge, "support too large");
  int dim = int(supp.size());
  int n = dist.n;
  if (dim == 1) return 1.0;
  std::vector<int> index(dist.size(), -1);
  for (int i = 0; i < dim; ++i) index[supp[size_t(i)]] = i;
  // single-site heat-bath chain of the table itself
  Matrix p = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    uint32_t s = supp[size_t(i)];
    for (int v = 0; v < n; ++v) {
      uint32_t s0 = s & ~(1u << v), s1 = s | (1u << v);
      double w0 = dist.prob(s0), w1 = dist.prob(s1);
      double z = w0 + w1;
      if (index[s0] >= 0) p(i, index[s0]) += w0 / (z * n);
      if (index[s1] >= 0) p(i, index[s1]) += w1 / (z * n);
    }
  }
  // K = 1/(n*gap): the Dirichlet form of the chain is (1/n) of the
  // tensorization denominator.
  Matrix sym(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      sym(i, j) = p(i, j) * std::sqrt(dist.prob(supp[size_t(i)]) / dist.prob(supp[size_t(j)]));
  Vector ev = symmetric_eigenvalues(sym);
  double lambda2 = ev[dim - 2];
  double gap = 1.0 - lambda2;
  if (gap <= 1e-12) return std::numeric_limits<double>::infinity();
  return 1.0 / (n * gap);
}

DenoisingJoint denoising_joint(const SpinSystem& sys, const EventFamily& fam, double t) {
  require(t >= 0 && t <= 1, Err::InvalidTilt, "time in [0,1]");
  DistTable mu = enumerate_dist(sys);
  const auto& supp = mu.support();
  std::vector<uint64_t> occ(supp.size());
  for (size_t i = 0; i < supp.size(); ++i) occ[i] = fam.occurring_mask(supp[i]);

  // P(Y_t = T, Y_1 = sigma) = mu(sigma) t^|T| (1-t)^{|occ(sigma)|-|T|} [T subset occ]
  std::vector<uint64_t> t_masks;
  std::vector<std::vector<double>> joint;
  std::vector<double> t_probs;
  std::unordered_map<uint64_t, size_t> row_of;
  for (size_t i = 0; i < supp.size(); ++i) {
    uint64_t o = occ[i];
    double base = mu.prob(supp[i]);
    uint64_t sub = o;
    while (true) {
      int kept = popcount(sub);
      int dropped = popcount(o) - kept;
      double w = base * std::pow(t, kept) * std::pow(1 - t, dropped);
      auto it = row_of.find(sub);
      size_t row;
      if (it == row_of.end()) {
        row = t_masks.size();
        row_of.emplace(sub, row);
        t_masks.push_back(sub);
        joint.emplace_back(mu.size(), 0.0);
        t_probs.push_back(0.0);
      } else {
        row = it->second;
      }
      joint[row][supp[i]] += w;
      t_probs[row] += w;
      if (sub == 0) break;
      sub = (sub - 1) & o;
    }
  }
  DenoisingJoint out;
  for (size_t r = 0; r < t_masks.size(); ++r) {
    if (t_probs[r] <= 0) continue;
    for (auto& x : joint[r]) x /= t_probs[r];
    out.t_masks.push_back(t_masks[r]);
    out.t_probs.push_back(t_probs[r]);
    out.conditional.push_back(std::move(joint[r]));
  }
  return out;
}

}  // namespace spinlab
