#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "spinlab/exact_oracle.hpp"
#include "spinlab/rng.hpp"
#include "test_support.hpp"

using namespace spinlab;

TEST_CASE("enumerate examples") {
  Graph k2 = complete_graph(2);
  // (2,2,1): weights (2,1,1,2)/6
  DistTable mu = enumerate_dist(SpinSystem(k2, SpinParams(2, 2, 1)));
  CHECK(mu.prob(0b00) == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(mu.prob(0b01) == doctest::Approx(1.0 / 6).epsilon(1e-12));
  CHECK(mu.prob(0b10) == doctest::Approx(1.0 / 6).epsilon(1e-12));
  CHECK(mu.prob(0b11) == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(mu.log_z == doctest::Approx(std::log(6)).epsilon(1e-12));

  DistTable uni = enumerate_dist(SpinSystem(build_graph(2, {}), SpinParams(1, 1, 1)));
  for (Config s = 0; s < 4; ++s) CHECK(uni.prob(s) == doctest::Approx(0.25));

  DistTable hc = enumerate_dist(SpinSystem(k2, SpinParams(0, 1, 1)));
  CHECK(hc.support().size() == 3);
  for (Config s : {0b00u, 0b01u, 0b10u}) CHECK(hc.prob(s) == doctest::Approx(1.0 / 3));
  CHECK(hc.prob(0b11) == 0.0);

  CHECK_THROWS_AS(enumerate_dist(SpinSystem(cycle_graph(8), SpinParams(1, 1, 1)), 6), Error);
}

TEST_CASE("parallel enumeration matches the serial reference") {
  for (const Graph& g : {cycle_graph(6), complete_graph(5), path_graph(8)}) {
    SpinSystem sys(g, SpinParams(0.3, 0.7, 1.3));
    DistTable a = enumerate_dist(sys), b = enumerate_dist_reference(sys);
    CHECK(a.log_z == doctest::Approx(b.log_z).epsilon(1e-13));
    for (uint64_t s = 0; s < a.size(); ++s)
      CHECK(a.probs[s] == doctest::Approx(b.probs[s]).epsilon(1e-13));
    auto ma = pair_moments(a), mb = pair_moments_reference(a);
    CHECK((ma.p11 - mb.p11).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("influence matrix") {
  // product law: zero influence
  DistTable prod = enumerate_dist(SpinSystem(build_graph(3, {}), SpinParams(1, 1, 0.7)));
  CHECK(influence_matrix(prod).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(lambda_max_influence(prod) < 1e-9);

  // K2 hardcore lambda=1: Psi(0,1) = 0 - 1/2 = -1/2; symmetric
  DistTable hc = enumerate_dist(SpinSystem(complete_graph(2), SpinParams(0, 1, 1)));
  Matrix psi = influence_matrix(hc);
  CHECK(psi(0, 1) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(psi(1, 0) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(psi(0, 0) == 0.0);
  CHECK(total_influence(hc, 0) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(total_influence(prod, 0) == doctest::Approx(1.0));

  // pinned coordinate rows vanish
  Pinning pin;
  pin.assignments[0] = 1;
  DistTable cond = enumerate_dist(SpinSystem(path_graph(3), SpinParams(0, 1, 1), pin));
  Matrix psic = influence_matrix(cond);
  for (int v = 0; v < 3; ++v) CHECK(psic(0, v) == 0.0);

  // symmetric instance: Psi(u,v) = Psi(v,u) under the C4 automorphism
  DistTable c4 = enumerate_dist(SpinSystem(cycle_graph(4), SpinParams(0, 1, 1)));
  Matrix p4 = influence_matrix(c4);
  CHECK(p4(0, 2) == doctest::Approx(p4(2, 0)).epsilon(1e-12));
  CHECK(p4(1, 3) == doctest::Approx(p4(3, 1)).epsilon(1e-12));

  // pencil eigenvalue agrees with a dense eigensolve of the literal matrix
  CHECK(lambda_max_influence(c4) == doctest::Approx(lambda_max_general(p4)).epsilon(1e-9));
}

TEST_CASE("second-order and SW correlation matrices") {
  // two disjoint edges: cross-blocks vanish
  Graph two = build_graph(4, {{0, 1}, {2, 3}});
  DistTable mu = enumerate_dist(SpinSystem(two, SpinParams(0.5, 0.8, 1.2)));
  Matrix so = second_order_correlation_matrix(mu, two);
  CHECK(so.rows() == 4);
  // oriented ids 0,1 belong to edge {0,1}; ids 2,3 to edge {2,3}
  for (int a : {0, 1})
    for (int b : {2, 3}) {
      CHECK(std::abs(so(a, b)) < 1e-12);
      CHECK(std::abs(so(b, a)) < 1e-12);
    }
  Matrix sw = sw_correlation_matrix(mu, two);
  CHECK(std::abs(sw(0, 1)) < 1e-12);
  CHECK(std::abs(sw(1, 0)) < 1e-12);

  // literal diagonal = 1 - mu(event)
  auto moments = event_moments(mu, EventFamily::edge_monochromatic(two, 1.0));
  for (int e = 0; e < 2; ++e)
    CHECK(sw(e, e) == doctest::Approx(1 - moments.p1[e]).epsilon(1e-12));
  Matrix sw0 = sw_correlation_matrix(mu, two, false);
  CHECK(sw0(0, 0) == 0.0);

  // single-edge Ising: off-diagonal-free matrix so lambda_max is the diagonal
  Graph k2 = complete_graph(2);
  DistTable ising = enumerate_dist(SpinSystem(k2, SpinParams(2, 2, 1)));
  Matrix swk2 = sw_correlation_matrix(ising, k2);
  CHECK(swk2.rows() == 1);
  CHECK(swk2(0, 0) == doctest::Approx(1 - 2.0 / 3).epsilon(1e-12));

  // zero-probability event rows vanish: hardcore forbids 11 so the oriented
  // event never fires under a pin
  Pinning pin;
  pin.assignments[0] = 0;
  DistTable hc = enumerate_dist(SpinSystem(k2, SpinParams(0, 1, 1), pin));
  Matrix so2 = second_order_correlation_matrix(hc, k2);
  CHECK(so2.row(0).cwiseAbs().maxCoeff() == 0.0);  // event 0: sigma_0=1, sigma_1=0

  // ferromagnetic C4 sanity ceiling
  DistTable fer = enumerate_dist(SpinSystem(cycle_graph(4), SpinParams(2, 2, 0.5)));
  double lm = lambda_max_event_correlation(fer, EventFamily::edge_monochromatic(cycle_graph(4), 1.0));
  CHECK(lm >= 0);
  CHECK(lm <= 64.0 * 2 / (0.5 * 0.5 * 0.5));

  // pencil route matches the dense eigensolve on the literal matrix
  Matrix lit = sw_correlation_matrix(fer, cycle_graph(4));
  CHECK(lambda_max_event_correlation(fer, EventFamily::edge_monochromatic(cycle_graph(4), 1.0)) ==
        doctest::Approx(lambda_max_general(lit)).epsilon(1e-9));
}

TEST_CASE("divergences") {
  DistTable a, b;
  a.n = b.n = 1;
  a.kind = b.kind = DomainKind::custom_ids;
  a.probs = {0.5, 0.5};
  b.probs = {0.75, 0.25};
  CHECK(divergence(DivKind::TV, a, a) == 0.0);
  CHECK(divergence(DivKind::chi2, a, a) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(divergence(DivKind::KL, a, a) == doctest::Approx(0.0).epsilon(1e-14));
  double kl = 0.5 * std::log(0.5 / 0.75) + 0.5 * std::log(0.5 / 0.25);
  CHECK(divergence(DivKind::KL, a, b) == doctest::Approx(kl).epsilon(1e-12));
  // disjoint point masses
  DistTable c = a, d = a;
  c.probs = {1.0, 0.0};
  d.probs = {0.0, 1.0};
  CHECK(divergence(DivKind::TV, c, d) == doctest::Approx(1.0));
  CHECK_THROWS_AS(divergence(DivKind::KL, c, d), Error);
  CHECK_THROWS_AS(divergence(DivKind::chi2, c, d), Error);
}

TEST_CASE("random-cluster enumeration and down operator marginals") {
  Graph c4 = cycle_graph(4);
  DistTable rc = enumerate_rc(c4, RandomClusterParams(0.5, 0.5));
  CHECK(rc.n == 4);
  double total = 0;
  for (uint64_t s = 0; s < rc.size(); ++s) total += rc.probs[s];
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  // conditioning keeps only supersets
  DistTable rc1 = enumerate_rc(c4, RandomClusterParams(0.5, 0.5), 0b0011);
  for (uint32_t s : rc1.support()) CHECK((s & 0b0011u) == 0b0011u);
}

TEST_CASE("at_variance_constant") {
  // product laws have constant exactly 1
  for (int n : {1, 2, 3, 5}) {
    Graph g = build_graph(n, {});
    for (double lambda : {0.4, 1.0, 3.0}) {
      DistTable mu = enumerate_dist(SpinSystem(g, SpinParams(1, 1, lambda)));
      CHECK(at_variance_constant(mu) == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
  // K2 hardcore lambda=1: finite K >= 1, matched by a direct random-function
  // supremum over the two-dimensional quotient space
  DistTable hc = enumerate_dist(SpinSystem(complete_graph(2), SpinParams(0, 1, 1)));
  double k = at_variance_constant(hc);
  CHECK(k >= 1.0);
  CHECK(std::isfinite(k));
  {
    const auto& supp = hc.support();
    Rng rng(3);
    double best = 0;
    for (int t = 0; t < 10000; ++t) {
      double f[3];
      for (double& x : f) x = rng.uniform(-1, 1);
      double mean = 0, var = 0;
      for (size_t i = 0; i < 3; ++i) mean += hc.prob(supp[i]) * f[i];
      for (size_t i = 0; i < 3; ++i) {
        double d = f[i] - mean;
        var += hc.prob(supp[i]) * d * d;
      }
      // sum_i E[Var(f | X_{-i})]
      double denom = 0;
      for (int v = 0; v < 2; ++v) {
        for (size_t i = 0; i < 3; ++i) {
          uint32_t s = supp[i];
          uint32_t s0 = s & ~(1u << v), s1 = s | (1u << v);
          double w0 = hc.prob(s0), w1 = hc.prob(s1);
          double z = w0 + w1;
          double f0 = 0, f1 = 0;
          for (size_t j = 0; j < 3; ++j) {
            if (supp[j] == s0) f0 = f[j];
            if (supp[j] == s1) f1 = f[j];
          }
          double cm = (w0 * f0 + w1 * f1) / z;
          double cv = w0 / z * (f0 - cm) * (f0 - cm) + w1 / z * (f1 - cm) * (f1 - cm);
          denom += hc.prob(s) * cv;
        }
      }
      if (denom > 1e-12) best = std::max(best, var / denom);
    }
    CHECK(best <= k + 1e-9);
    CHECK(std::abs(best - k) < 1e-6);
  }
  // perfectly correlated pair: disconnected single-site dynamics
  DistTable corr;
  corr.n = 2;
  corr.kind = DomainKind::vertices;
  corr.probs = {0.5, 0.0, 0.0, 0.5};
  CHECK(std::isinf(at_variance_constant(corr)));
}
