#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "spinlab/graph.hpp"

namespace spinlab {

// Configurations are bitmasks over vertices: bit v is the spin of v.
using Config = uint32_t;

inline int popcount(uint64_t x) { return __builtin_popcountll(x); }

// Edge activities (beta, gamma) on monochromatic edges and external field
// lambda on 1-spins. gamma > 0 always; lambda = 0 is admitted only for the
// ferromagnetic / Swendsen-Wang surface.
struct SpinParams {
  double beta = 1.0;
  double gamma = 1.0;
  double lambda = 1.0;

  SpinParams() = default;
  SpinParams(double b, double c, double l);

  bool antiferromagnetic() const { return beta * gamma < 1.0; }
  bool ferromagnetic() const { return beta * gamma > 1.0; }
  bool hard_constraint() const { return beta == 0.0; }
};

SpinParams edge_tilt(const SpinParams& p, double theta);    // (tb, tc, l)
SpinParams vertex_tilt(const SpinParams& p, double theta);  // (b, c, tl)
SpinParams flip(const SpinParams& p);                       // (c, b, 1/l)

// Partial conditioning: spin assignments, edges forced monochromatic, and
// oriented edges (u,v) forced to sigma_u = 1 and sigma_v = 0.
struct Pinning {
  std::map<int, int> assignments;                    // vertex -> {0,1}
  std::vector<std::pair<int, int>> mono_edges;       // {u,v} forced equal
  std::vector<std::pair<int, int>> oriented_events;  // (u,v): u<-1, v<-0

  bool empty() const {
    return assignments.empty() && mono_edges.empty() && oriented_events.empty();
  }
  void validate(int n) const;  // throws InconsistentPinning / VertexOutOfRange
};

struct SpinSystem {
  Graph g;
  SpinParams params;
  Pinning pin;

  SpinSystem() = default;
  SpinSystem(Graph graph, SpinParams p, Pinning pn = {});

  int n() const { return g.n; }
  bool feasible(Config sigma) const;
  // log of beta^m1 gamma^m0 lambda^|sigma|; -inf when sigma violates pin
  double log_weight(Config sigma) const;

  SpinSystem with_params(const SpinParams& p) const;
  SpinSystem with_pinned(int v, int value) const;

  // caches built at construction
  uint32_t pin_mask = 0, pin_value = 0;
  std::vector<int> mono_edge_ids;
  std::vector<std::pair<int, int>> event_pairs;  // oriented events
  double log_beta = 0, log_gamma = 0, log_lambda = 0;
};

double log_weight(const SpinParams& p, const Graph& g, Config sigma, const Pinning& pin = {});

// Decidable by enumeration: at least one configuration carries positive weight.
bool pinning_feasible(const SpinSystem& sys);

enum class EventKind { vertex_occupied, oriented_edge_10, edge_monochromatic, custom };

struct Event {
  std::string id;
  std::function<bool(Config)> occurs;
};

// A family of configuration events with per-event tilts in (0,1]. The three
// preset kinds enumerate one event per vertex / oriented edge / edge.
struct EventFamily {
  EventKind kind = EventKind::custom;
  std::vector<Event> events;
  std::vector<double> tilts;

  static EventFamily vertex_occupied(const Graph& g, double theta);
  static EventFamily oriented_edge_10(const Graph& g, double theta);
  static EventFamily edge_monochromatic(const Graph& g, double theta);
  static EventFamily custom(std::vector<Event> events, std::vector<double> tilts);

  size_t size() const { return events.size(); }
  uint64_t occurring_mask(Config sigma) const;
  double tilt_product(Config sigma) const;  // prod over occurring events of tilt
  void validate() const;
};

std::vector<std::string> events_occurring(const EventFamily& fam, Config sigma);

struct RandomClusterParams {
  double p = 0.5;       // edge parameter in [0,1)
  double lambda = 1.0;  // vertex activity in [0,1]
  RandomClusterParams() = default;
  RandomClusterParams(double p_, double lambda_);
  double ising_beta() const { return 1.0 / (1.0 - p); }
};

// log of p^|S| (1-p)^|E\S| prod_C (1 + lambda^|C|) over components of (V,S)
double rc_weight_log(const RandomClusterParams& rc, const Graph& g, uint64_t edge_mask);

int count_mono_edges(const Graph& g, Config sigma);         // m(sigma)
int count_mono_edges_spin(const Graph& g, Config s, int b); // m_b(sigma)

}  // namespace spinlab
