#include "spinlab/dynamics.hpp"

#include <cmath>
#include <limits>

namespace spinlab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// conditional law of the spin at v given the rest, from local weights
double prob_one_at(const SpinSystem& sys, Config sigma, int v) {
  double lw1 = sys.log_weight(sigma | (1u << v));
  double lw0 = sys.log_weight(sigma & ~(1u << v));
  require(lw1 > kNegInf || lw0 > kNegInf, Err::InfeasibleState, "both spins infeasible");
  if (lw1 == kNegInf) return 0;
  if (lw0 == kNegInf) return 1;
  double m = std::max(lw0, lw1);
  double w1 = std::exp(lw1 - m), w0 = std::exp(lw0 - m);
  return w1 / (w0 + w1);
}

// exact draw from the conditioned system by scanning all configurations
Config sample_exact(const SpinSystem& sys, Rng& rng) {
  require(sys.n() <= 22, Err::UpStepTooLarge, "exact up step needs n <= 22");
  uint64_t total = uint64_t(1) << sys.n();
  double mx = kNegInf;
  for (uint64_t s = 0; s < total; ++s) mx = std::max(mx, sys.log_weight(Config(s)));
  require(mx > kNegInf, Err::EmptySupport, "empty conditional support");
  double z = 0;
  for (uint64_t s = 0; s < total; ++s) {
    double lw = sys.log_weight(Config(s));
    if (lw > kNegInf) z += std::exp(lw - mx);
  }
  double u = rng.next_double() * z, acc = 0;
  Config last = 0;
  for (uint64_t s = 0; s < total; ++s) {
    double lw = sys.log_weight(Config(s));
    if (lw == kNegInf) continue;
    acc += std::exp(lw - mx);
    last = Config(s);
    if (acc >= u) return last;
  }
  return last;
}

long default_sweeps(int n) {
  return long(10.0 * n * std::log(std::max(2, n))) + 1;
}

Config sample_up(const SpinSystem& cond, Config start, Rng& rng, ChainSpec::UpMode mode,
                 long sweeps) {
  if (mode == ChainSpec::UpMode::exact_enumeration) return sample_exact(cond, rng);
  long total = (sweeps > 0 ? sweeps : default_sweeps(cond.n())) * cond.n();
  Config s = start;
  for (long i = 0; i < total; ++i) s = glauber_step(cond, s, rng);
  return s;
}

}  // namespace

Config glauber_step(const SpinSystem& sys, Config sigma, Rng& rng) {
  require(sys.feasible(sigma), Err::InfeasibleState, "state violates the conditioning");
  int v = int(rng.next_below(uint64_t(sys.n())));
  double p1 = prob_one_at(sys, sigma, v);
  return rng.bernoulli(p1) ? (sigma | (1u << v)) : (sigma & ~(1u << v));
}

Config vertex_field_step(const SpinSystem& sys, double theta, Config sigma, Rng& rng,
                         ChainSpec::UpMode up_mode, long sweeps) {
  require(theta > 0 && theta < 1, Err::InvalidTilt, "field tilt in (0,1)");
  require(sys.feasible(sigma), Err::InfeasibleState, "state violates the conditioning");
  Pinning pn = sys.pin;
  for (int v = 0; v < sys.n(); ++v)
    if ((sigma >> v & 1u) && !rng.bernoulli(theta)) pn.assignments[v] = 1;
  SpinSystem cond(sys.g, vertex_tilt(sys.params, theta), pn);
  return sample_up(cond, sigma, rng, up_mode, sweeps);
}

Config edge_field_step(const SpinSystem& sys, double theta, Config sigma, Rng& rng,
                       ChainSpec::UpMode up_mode, long sweeps) {
  require(theta > 0 && theta < 1, Err::InvalidTilt, "field tilt in (0,1)");
  require(sys.feasible(sigma), Err::InfeasibleState, "state violates the conditioning");
  Pinning pn = sys.pin;
  for (auto [u, v] : sys.g.edges) {
    if (((sigma >> u) & 1u) == ((sigma >> v) & 1u)) continue;  // monochromatic stays
    if (rng.bernoulli(theta)) continue;                        // removed
    pn.assignments[u] = int(sigma >> u & 1u);
    pn.assignments[v] = int(sigma >> v & 1u);
  }
  SpinSystem cond(sys.g, edge_tilt(sys.params, 1.0 / theta), pn);
  return sample_up(cond, sigma, rng, up_mode, sweeps);
}

Config event_field_step(const SpinSystem& sys, const EventFamily& fam, Config sigma, Rng& rng,
                        ChainSpec::UpMode up_mode, long sweeps) {
  fam.validate();
  require(sys.feasible(sigma), Err::InfeasibleState, "state violates the conditioning");
  uint64_t occ = fam.occurring_mask(sigma);
  uint64_t kept = 0;
  for (size_t a = 0; a < fam.size(); ++a)
    if ((occ >> a & 1) && !rng.bernoulli(fam.tilts[a])) kept |= uint64_t(1) << a;

  // preset families with a uniform tilt resample from an ordinary tilted,
  // conditioned system
  bool uniform = true;
  for (double t : fam.tilts)
    if (t != fam.tilts[0]) uniform = false;
  if (uniform && !fam.tilts.empty() &&
      (fam.kind == EventKind::vertex_occupied || fam.kind == EventKind::oriented_edge_10 ||
       fam.kind == EventKind::edge_monochromatic)) {
    double theta = fam.tilts[0];
    Pinning pn = sys.pin;
    SpinParams tilted = sys.params;
    if (fam.kind == EventKind::vertex_occupied) {
      tilted = vertex_tilt(sys.params, theta);
      for (size_t a = 0; a < fam.size(); ++a)
        if (kept >> a & 1) pn.assignments[int(a)] = 1;
    } else if (fam.kind == EventKind::oriented_edge_10) {
      tilted = theta < 1 ? edge_tilt(sys.params, 1.0 / theta) : sys.params;
      for (size_t a = 0; a < fam.size(); ++a)
        if (kept >> a & 1) pn.oriented_events.push_back(sys.g.oriented_edges[a]);
    } else {
      tilted = edge_tilt(sys.params, theta);
      for (size_t a = 0; a < fam.size(); ++a)
        if (kept >> a & 1) pn.mono_edges.push_back(sys.g.edges[a]);
    }
    SpinSystem cond(sys.g, tilted, pn);
    return sample_up(cond, sigma, rng, up_mode, sweeps);
  }

  // custom events: exact resampling from mu tilted by the event weights,
  // conditioned on every kept event occurring
  require(up_mode == ChainSpec::UpMode::exact_enumeration, Err::UpStepTooLarge,
          "custom event families support exact up steps only");
  require(sys.n() <= 22, Err::UpStepTooLarge, "exact up step needs n <= 22");
  uint64_t total = uint64_t(1) << sys.n();
  double mx = kNegInf;
  std::vector<double> lw(total, kNegInf);
  for (uint64_t s = 0; s < total; ++s) {
    double base = sys.log_weight(Config(s));
    if (base == kNegInf) continue;
    uint64_t o = fam.occurring_mask(Config(s));
    if ((o & kept) != kept) continue;
    double tilt = 0;
    for (size_t a = 0; a < fam.size(); ++a)
      if (o >> a & 1) tilt += std::log(fam.tilts[a]);
    lw[s] = base + tilt;
    mx = std::max(mx, lw[s]);
  }
  require(mx > kNegInf, Err::EmptySupport, "empty conditional support");
  double z = 0;
  for (uint64_t s = 0; s < total; ++s)
    if (lw[s] > kNegInf) z += std::exp(lw[s] - mx);
  double u = rng.next_double() * z, acc = 0;
  Config last = sigma;
  for (uint64_t s = 0; s < total; ++s) {
    if (lw[s] == kNegInf) continue;
    acc += std::exp(lw[s] - mx);
    last = Config(s);
    if (acc >= u) break;
  }
  return last;
}

Config swendsen_wang_step(const SpinSystem& sys, Config sigma, Rng& rng) {
  const SpinParams& p = sys.params;
  require(p.beta == p.gamma && p.beta >= 1, Err::NotFerromagnetic,
          "Swendsen-Wang needs beta = gamma >= 1");
  require(p.lambda <= 1, Err::LambdaTooLarge, "Swendsen-Wang needs lambda in [0,1]");
  require(sys.pin.empty(), Err::NotFerromagnetic, "Swendsen-Wang runs unconditioned");
  double keep = 1.0 - 1.0 / p.beta;
  uint64_t kept_edges = 0;
  for (int e = 0; e < sys.g.m(); ++e) {
    auto [u, v] = sys.g.edges[size_t(e)];
    if (((sigma >> u) & 1u) != ((sigma >> v) & 1u)) continue;
    if (rng.bernoulli(keep)) kept_edges |= uint64_t(1) << e;
  }
  auto label = component_labels(sys.g, kept_edges);
  std::vector<int> comp_size(size_t(sys.n()), 0);
  for (int v = 0; v < sys.n(); ++v) comp_size[size_t(label[size_t(v)])]++;
  std::vector<int8_t> comp_spin(size_t(sys.n()), -1);
  Config out = 0;
  for (int v = 0; v < sys.n(); ++v) {
    int r = label[size_t(v)];
    if (comp_spin[size_t(r)] < 0) {
      double lam_pow = std::pow(p.lambda, comp_size[size_t(r)]);
      comp_spin[size_t(r)] = rng.bernoulli(lam_pow / (1 + lam_pow)) ? 1 : 0;
    }
    if (comp_spin[size_t(r)]) out |= 1u << v;
  }
  return out;
}

Config initial_state(const SpinSystem& sys) {
  Config s = 0;
  for (auto [v, val] : sys.pin.assignments)
    if (val) s |= 1u << v;
  for (auto [u, v] : sys.pin.oriented_events) {
    s |= 1u << u;
    s &= ~(1u << v);
  }
  require(sys.feasible(s) && sys.log_weight(s) > kNegInf, Err::InfeasibleState,
          "greedy all-zeros completion infeasible; pass an explicit initial state");
  return s;
}

Trajectory run_chain(const SpinSystem& sys, const ChainSpec& chain, long steps,
                     RecordPolicy record, long thin_stride, Config initial) {
  Config s = initial == UINT32_MAX ? initial_state(sys) : initial;
  require(sys.feasible(s), Err::InfeasibleState, "initial state violates the conditioning");
  Trajectory out;
  out.thin_stride = thin_stride;
  uint64_t checksum = 1469598103934665603ULL;  // FNV-1a over (step, state)
  auto fold = [&checksum](uint64_t x) {
    for (int b = 0; b < 8; ++b) {
      checksum ^= (x >> (8 * b)) & 0xff;
      checksum *= 1099511628211ULL;
    }
  };
  auto maybe_record = [&](long step, Config state) {
    if (record == RecordPolicy::all || (record == RecordPolicy::thin && step % thin_stride == 0))
      out.states.push_back(state);
  };
  fold(s);
  maybe_record(0, s);
  for (long t = 1; t <= steps; ++t) {
    Rng rng(chain.seed, uint64_t(t), uint64_t(chain.kind));
    switch (chain.kind) {
      case ChainSpec::Kind::glauber:
        s = glauber_step(sys, s, rng);
        break;
      case ChainSpec::Kind::vertex_field:
        s = vertex_field_step(sys, chain.theta, s, rng, chain.up_mode, chain.nested_sweeps);
        break;
      case ChainSpec::Kind::edge_field:
        s = edge_field_step(sys, chain.theta, s, rng, chain.up_mode, chain.nested_sweeps);
        break;
      case ChainSpec::Kind::event_field:
        s = event_field_step(sys, chain.family, s, rng, chain.up_mode, chain.nested_sweeps);
        break;
      case ChainSpec::Kind::swendsen_wang:
        s = swendsen_wang_step(sys, s, rng);
        break;
    }
    fold(uint64_t(t));
    fold(s);
    maybe_record(t, s);
  }
  if (out.states.empty() || out.states.back() != s) out.states.push_back(s);
  out.step_count = steps;
  out.rng_trace_checksum = checksum;
  return out;
}

}  // namespace spinlab
