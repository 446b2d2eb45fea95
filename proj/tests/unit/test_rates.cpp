#include <cmath>

#include "csma/free_energy.hpp"
#include "csma/kikuchi.hpp"
#include "csma/rates.hpp"
#include "doctest.h"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace csma;
using namespace csma::testing;

namespace {

ThroughputVector constant(std::size_t n, double v) { return ThroughputVector(std::vector<double>(n, v)); }

double max_rel(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]) / std::abs(b[i]));
  return m;
}

}  // namespace

TEST_CASE("throughput vectors and presets") {
  CHECK_THROWS(ThroughputVector({0.2, 0.0}));
  CHECK_THROWS(ThroughputVector({0.2, 1.0}));
  const auto u = uniform_over_max_clique(complete_graph(4), 0.8);
  CHECK(u[0] == doctest::Approx(0.2));
  const auto d = degree_scaled(star_graph(3), 0.85);
  CHECK(d[0] == doctest::Approx(0.85 / 4));
  CHECK(d[1] == doctest::Approx(0.85 / 2));
}

TEST_CASE("back-off rates from regions") {
  CHECK(backoff_from_regions(build_kmax_regions(empty_graph(1), 2), constant(1, 0.5))[0] == doctest::Approx(1.0));
  const auto k2 = backoff_from_regions(build_kmax_regions(complete_graph(2), 2), constant(2, 0.25));
  CHECK(k2[0] == doctest::Approx(0.5).epsilon(1e-14));
  const auto k3 = backoff_from_regions(build_kmax_regions(complete_graph(3), 3), constant(3, 0.2));
  CHECK(k3[1] == doctest::Approx(0.5).epsilon(1e-14));

  // a region sum at one is infeasible, naming the region
  try {
    (void)backoff_from_regions(build_kmax_regions(complete_graph(3), 3), constant(3, 0.34));
    FAIL("expected InfeasibleInput");
  } catch (const InfeasibleInput& e) {
    CHECK(e.offending() == std::vector<NodeId>{0, 1, 2});
  }
}

TEST_CASE("Bethe rates") {
  const double a = 0.15;
  const auto star = bethe_rates(star_graph(4), constant(5, a));
  CHECK(star[0] == doctest::Approx(a * std::pow(1 - a, 3) / std::pow(1 - 2 * a, 4)).epsilon(1e-14));
  CHECK(bethe_rates(complete_graph(2), constant(2, 0.25))[0] == doctest::Approx(0.5));
  CHECK(bethe_rates(empty_graph(1), constant(1, 0.3))[0] == doctest::Approx(0.3 / 0.7));
  CHECK_THROWS_AS(bethe_rates(complete_graph(2), constant(2, 0.5)), InfeasibleInput);
  // edge sums fine, clique sum not: computed with a warning
  const auto warn = bethe_rates(complete_graph(3), constant(3, 0.4));
  CHECK(warn.gamma_warning);
  CHECK_FALSE(bethe_rates(complete_graph(3), constant(3, 0.3)).gamma_warning);
}

TEST_CASE("triangle rates") {
  CHECK(triangle_rates(complete_graph(3), constant(3, 0.2))[0] == doctest::Approx(0.5).epsilon(1e-14));
  const auto path = path_graph(5);
  const auto phi = ThroughputVector({0.1, 0.3, 0.2, 0.25, 0.4});
  CHECK(max_rel(triangle_rates(path, phi).nu, bethe_rates(path, phi).nu) < 1e-14);
  // only the three triangles through a node enter its rate
  const double k4 = 0.1 * std::pow(0.8, 3) / (0.9 * std::pow(0.7, 3));
  CHECK(triangle_rates(complete_graph(4), constant(4, 0.1))[2] == doctest::Approx(k4).epsilon(1e-13));
  CHECK(backoff_from_regions(build_kmax_regions(complete_graph(4), 3), constant(4, 0.1))[2] ==
        doctest::Approx(k4).epsilon(1e-13));
}

TEST_CASE("recursive size-k_max rates") {
  const auto g = random_geometric_graph(30, 0.3, 8);
  const auto phi = degree_scaled(g, 0.85);
  const auto k1 = kmax_rates_recursive(g, phi, 1);
  for (NodeId i = 0; i < g.size(); ++i) CHECK(k1[i] == doctest::Approx(phi[i] / (1 - phi[i])));
  CHECK(max_rel(kmax_rates_recursive(g, phi, 2).nu, bethe_rates(g, phi).nu) < 1e-14);
  CHECK(max_rel(kmax_rates_recursive(g, phi, 3).nu, triangle_rates(g, phi).nu) < 1e-12);
  CHECK(kmax_rates_recursive(complete_graph(3), constant(3, 0.2), 3)[0] == doctest::Approx(0.5));

  const std::size_t w = clique_number(g);
  CHECK(kmax_rates_recursive(g, phi, w).nu == kmax_rates_recursive(g, phi, w + 3).nu);
  const auto levels = kmax_rates_levels(g, phi, 100);
  CHECK(levels.size() == w);
  CHECK(kmax_rates_recursive(g, phi, 100).k_max == std::optional<std::size_t>(100));

  CHECK_THROWS_AS(kmax_rates_recursive(complete_graph(3), constant(3, 0.4), 3), InfeasibleInput);
}

TEST_CASE("recursion, region formula and direct products agree") {
  Rng rng(21);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = uniform_index(rng, 1, 11);
    const auto g = random_graph(n, uniform(rng, 0.2, 0.9), rng);
    const auto phi = random_feasible_targets(g, uniform(rng, 0.3, 0.9), rng);
    const std::vector<double> p(phi.values().begin(), phi.values().end());
    for (std::size_t k = 1; k <= clique_number(g) + 1; ++k) {
      const auto rec = kmax_rates_recursive(g, phi, k).nu;
      CHECK(max_rel(rec, direct_region_rates(g, p, k)) < 1e-11);
      if (k >= 2) {
        CHECK(max_rel(rec, backoff_from_regions(build_kmax_regions(g, k), phi).nu) < 1e-12);
        CHECK(max_rel(rec, backoff_from_regions(build_kikuchi_regions(g, k), phi).nu) < 1e-12);
      }
    }
  }
}

TEST_CASE("clique belief free energy") {
  const auto single = build_kmax_regions(empty_graph(1), 2);
  const std::vector<double> half{0.5};
  const std::vector<double> one{1.0};
  const auto f = clique_belief_free_energy(single, half, one);
  CHECK(f.energy == doctest::Approx(0.0));
  CHECK(f.entropy == doctest::Approx(std::log(2.0)));
  CHECK(f.free_energy == doctest::Approx(-std::log(2.0)));

  // stationarity for K2 under Bethe regions
  const auto k2 = build_kmax_regions(complete_graph(2), 2);
  const std::vector<double> nu{0.5, 0.5};
  const double h = 1e-6;
  for (std::size_t i = 0; i < 2; ++i) {
    std::vector<double> up{0.25, 0.25};
    std::vector<double> down{0.25, 0.25};
    up[i] += h;
    down[i] -= h;
    const double grad = (clique_belief_free_energy(k2, up, nu).free_energy -
                         clique_belief_free_energy(k2, down, nu).free_energy) /
                        (2 * h);
    CHECK(std::abs(grad) < 1e-6);
  }
}

TEST_CASE("inverse belief propagation fixed point") {
  CHECK(ibp_fixed_point_check(complete_graph(2), constant(2, 0.25)));
  Rng rng(2);
  const auto g = random_graph(12, 0.4, rng);
  const auto phi = random_feasible_targets(g, 0.8, rng);
  auto m = bethe_ibp_messages(g, phi);
  CHECK(m.size() == 2 * g.num_edges());
  CHECK(ibp_fixed_point_check(g, phi, m));
  m.front().ratio *= 1.01;
  CHECK_FALSE(ibp_fixed_point_check(g, phi, m));
}
