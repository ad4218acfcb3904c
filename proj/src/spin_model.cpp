#include "spinlab/spin_model.hpp"

#include <cmath>
#include <limits>

namespace spinlab {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

SpinParams::SpinParams(double b, double c, double l) : beta(b), gamma(c), lambda(l) {
  require(gamma > 0, Err::InvalidTilt, "gamma must be positive");
  require(beta >= 0, Err::InvalidTilt, "beta must be nonnegative");
  require(lambda >= 0, Err::ZeroField, "lambda must be nonnegative");
}

SpinParams edge_tilt(const SpinParams& p, double theta) {
  require(theta > 0, Err::NonPositiveTilt, "edge tilt " + std::to_string(theta));
  return SpinParams(theta * p.beta, theta * p.gamma, p.lambda);
}

SpinParams vertex_tilt(const SpinParams& p, double theta) {
  require(theta > 0, Err::NonPositiveTilt, "vertex tilt " + std::to_string(theta));
  return SpinParams(p.beta, p.gamma, theta * p.lambda);
}

SpinParams flip(const SpinParams& p) {
  require(p.lambda > 0, Err::ZeroField, "flip needs lambda > 0");
  return SpinParams(p.gamma, p.beta, 1.0 / p.lambda);
}

void Pinning::validate(int n) const {
  auto check_vertex = [&](int v) {
    require(v >= 0 && v < n, Err::VertexOutOfRange, "pinned vertex " + std::to_string(v));
  };
  for (auto [v, s] : assignments) {
    check_vertex(v);
    require(s == 0 || s == 1, Err::InconsistentPinning, "spin must be 0/1");
  }
  for (auto [u, v] : mono_edges) {
    check_vertex(u);
    check_vertex(v);
  }
  for (auto [u, v] : oriented_events) {
    check_vertex(u);
    check_vertex(v);
    auto iu = assignments.find(u), iv = assignments.find(v);
    require(iu == assignments.end() || iu->second == 1, Err::InconsistentPinning,
            "oriented event contradicts assignment at u");
    require(iv == assignments.end() || iv->second == 0, Err::InconsistentPinning,
            "oriented event contradicts assignment at v");
  }
}

SpinSystem::SpinSystem(Graph graph, SpinParams p, Pinning pn)
    : g(std::move(graph)), params(p), pin(std::move(pn)) {
  require(g.n <= 32, Err::TooLarge, "bitmask configurations support n <= 32");
  pin.validate(g.n);
  for (auto [v, s] : pin.assignments) {
    pin_mask |= 1u << v;
    if (s) pin_value |= 1u << v;
  }
  for (auto [u, v] : pin.mono_edges) {
    int e = g.edge_id(u, v);
    require(e >= 0, Err::EdgeNotInGraph,
            "mono edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    mono_edge_ids.push_back(e);
  }
  event_pairs = pin.oriented_events;
  log_beta = params.beta > 0 ? std::log(params.beta) : kNegInf;
  log_gamma = std::log(params.gamma);
  log_lambda = params.lambda > 0 ? std::log(params.lambda) : kNegInf;
}

bool SpinSystem::feasible(Config s) const {
  if ((s & pin_mask) != pin_value) return false;
  for (int e : mono_edge_ids) {
    auto [u, v] = g.edges[size_t(e)];
    if (((s >> u) & 1u) != ((s >> v) & 1u)) return false;
  }
  for (auto [u, v] : event_pairs)
    if (!((s >> u) & 1u) || ((s >> v) & 1u)) return false;
  return true;
}

double SpinSystem::log_weight(Config s) const {
  if (!feasible(s)) return kNegInf;
  int m1 = 0, m0 = 0;
  for (auto [u, v] : g.edges) {
    unsigned a = (s >> u) & 1u, b = (s >> v) & 1u;
    m1 += int(a & b);
    m0 += int((a | b) ^ 1u);
  }
  int ones = popcount(s);
  // conventions: 0*log 0 = 0, log 0 = -inf
  double lw = m0 * log_gamma;
  if (m1 > 0) {
    if (params.beta == 0) return kNegInf;
    lw += m1 * log_beta;
  }
  if (ones > 0) {
    if (params.lambda == 0) return kNegInf;
    lw += ones * log_lambda;
  }
  return lw;
}

SpinSystem SpinSystem::with_params(const SpinParams& p) const { return SpinSystem(g, p, pin); }

SpinSystem SpinSystem::with_pinned(int v, int value) const {
  Pinning pn = pin;
  pn.assignments[v] = value;
  return SpinSystem(g, params, pn);
}

double log_weight(const SpinParams& p, const Graph& g, Config sigma, const Pinning& pin) {
  return SpinSystem(g, p, pin).log_weight(sigma);
}

bool pinning_feasible(const SpinSystem& sys) {
  uint64_t total = uint64_t(1) << sys.n();
  for (uint64_t s = 0; s < total; ++s)
    if (sys.log_weight(Config(s)) > kNegInf) return true;
  return false;
}

EventFamily EventFamily::vertex_occupied(const Graph& g, double theta) {
  EventFamily f;
  f.kind = EventKind::vertex_occupied;
  for (int v = 0; v < g.n; ++v)
    f.events.push_back({"v" + std::to_string(v), [v](Config s) { return (s >> v & 1u) != 0; }});
  f.tilts.assign(f.events.size(), theta);
  f.validate();
  return f;
}

EventFamily EventFamily::oriented_edge_10(const Graph& g, double theta) {
  EventFamily f;
  f.kind = EventKind::oriented_edge_10;
  for (auto [u, v] : g.oriented_edges)
    f.events.push_back({"a" + std::to_string(u) + "_" + std::to_string(v),
                        [u, v](Config s) { return (s >> u & 1u) && !(s >> v & 1u); }});
  f.tilts.assign(f.events.size(), theta);
  f.validate();
  return f;
}

EventFamily EventFamily::edge_monochromatic(const Graph& g, double theta) {
  EventFamily f;
  f.kind = EventKind::edge_monochromatic;
  for (auto [u, v] : g.edges)
    f.events.push_back({"e" + std::to_string(u) + "_" + std::to_string(v),
                        [u, v](Config s) { return (s >> u & 1u) == (s >> v & 1u); }});
  f.tilts.assign(f.events.size(), theta);
  f.validate();
  return f;
}

EventFamily EventFamily::custom(std::vector<Event> events, std::vector<double> tilts) {
  EventFamily f;
  f.kind = EventKind::custom;
  f.events = std::move(events);
  f.tilts = std::move(tilts);
  f.validate();
  return f;
}

void EventFamily::validate() const {
  require(events.size() == tilts.size(), Err::InvalidTilt, "one tilt per event");
  require(events.size() <= 64, Err::TooLarge, "at most 64 events");
  for (double t : tilts)
    require(t > 0 && t <= 1, Err::InvalidTilt, "event tilt must lie in (0,1]");
}

uint64_t EventFamily::occurring_mask(Config sigma) const {
  uint64_t m = 0;
  for (size_t i = 0; i < events.size(); ++i)
    if (events[i].occurs(sigma)) m |= uint64_t(1) << i;
  return m;
}

double EventFamily::tilt_product(Config sigma) const {
  double p = 1.0;
  for (size_t i = 0; i < events.size(); ++i)
    if (events[i].occurs(sigma)) p *= tilts[i];
  return p;
}

std::vector<std::string> events_occurring(const EventFamily& fam, Config sigma) {
  std::vector<std::string> ids;
  for (size_t i = 0; i < fam.events.size(); ++i)
    if (fam.events[i].occurs(sigma)) ids.push_back(fam.events[i].id);
  return ids;
}

RandomClusterParams::RandomClusterParams(double p_, double lambda_) : p(p_), lambda(lambda_) {
  require(p >= 0 && p < 1, Err::InvalidTilt, "rc edge parameter in [0,1)");
  require(lambda >= 0 && lambda <= 1, Err::LambdaTooLarge, "rc vertex activity in [0,1]");
}

double rc_weight_log(const RandomClusterParams& rc, const Graph& g, uint64_t edge_mask) {
  int ns = popcount(edge_mask);
  int nc = g.m() - ns;
  double lw = 0;
  if (ns > 0) {
    if (rc.p == 0) return kNegInf;
    lw += ns * std::log(rc.p);
  }
  if (nc > 0) lw += nc * std::log1p(-rc.p);
  auto label = component_labels(g, edge_mask);
  std::vector<int> size(size_t(g.n), 0);
  for (int v = 0; v < g.n; ++v) size[size_t(label[size_t(v)])]++;
  for (int v = 0; v < g.n; ++v)
    if (size[size_t(v)] > 0) lw += std::log1p(std::pow(rc.lambda, size[size_t(v)]));
  return lw;
}

int count_mono_edges(const Graph& g, Config sigma) {
  int m = 0;
  for (auto [u, v] : g.edges) m += int(((sigma >> u) & 1u) == ((sigma >> v) & 1u));
  return m;
}

int count_mono_edges_spin(const Graph& g, Config s, int b) {
  int m = 0;
  for (auto [u, v] : g.edges) {
    unsigned a = (s >> u) & 1u, c = (s >> v) & 1u;
    if (a == c && int(a) == b) ++m;
  }
  return m;
}

}  // namespace spinlab
