#include "csma/cliques.hpp"
#include "csma/kikuchi.hpp"
#include "csma/regions.hpp"
#include "doctest.h"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace csma;
using namespace csma::testing;

namespace {

std::int64_t c_of(const RegionSet& s, std::vector<NodeId> vars, bool factors = true) {
  const Region* r = s.find(vars, factors);
  REQUIRE(r != nullptr);
  return r->counting_number;
}

}  // namespace

TEST_CASE("size-k_max regions on small graphs") {
  const auto k3 = complete_graph(3);
  const auto bethe = build_kmax_regions(k3, 2);
  CHECK(bethe.kind == RegionKind::bethe);
  CHECK(bethe.regions.size() == 9);
  for (NodeId i = 0; i < 3; ++i) CHECK(c_of(bethe, {i}, false) == -2);
  CHECK(c_of(bethe, {0, 1}) == 1);

  const auto tri = build_kmax_regions(k3, 3);
  CHECK(tri.kind == RegionKind::triangle);
  CHECK(c_of(tri, {0, 1, 2}) == 1);
  CHECK(c_of(tri, {0, 1}) == 0);
  for (NodeId i = 0; i < 3; ++i) CHECK(c_of(tri, {i}, false) == -1);

  const auto p2 = build_kmax_regions(path_graph(3), 2);
  const auto p3 = build_kmax_regions(path_graph(3), 3);
  REQUIRE(p2.regions.size() == p3.regions.size());
  for (std::size_t r = 0; r < p2.regions.size(); ++r) {
    CHECK(p2.regions[r].same_scope(p3.regions[r]));
    CHECK(p2.regions[r].counting_number == p3.regions[r].counting_number);
  }

  CHECK_THROWS(build_kmax_regions(k3, 1));
  // isolated node: R_x gets counting number 0
  CHECK(c_of(build_kmax_regions(empty_graph(2), 2), {0}, false) == 0);
}

TEST_CASE("counting number examples") {
  const auto k3 = complete_graph(3);
  CHECK(counting_number(k3, Clique{0, 1}, 3) == 0);
  CHECK(counting_number(k3, Clique{0, 1, 2}, 3) == 1);
  CHECK(counting_number(complete_graph(4), Clique{0}, 4) == -1);
  CHECK(counting_number(complete_graph(5), Clique{1, 2}, 3) == 1 - 3);
  // maximal cliques always get 1
  for (const auto& k : maximal_cliques(house_graph())) CHECK(counting_number(house_graph(), k, 5) == 1);
  CHECK_THROWS(counting_number(k3, Clique{0, 1, 2}, 2));
}

TEST_CASE("closed-form counting numbers match the defining relation") {
  Rng rng(3);
  for (int t = 0; t < 80; ++t) {
    const std::size_t n = uniform_index(rng, 1, 9);
    const auto g = random_graph(n, uniform(rng, 0.2, 0.9), rng);
    const std::size_t w = clique_number(g);
    for (std::size_t k = 1; k <= w + 1; ++k) {
      for (const auto& [members, c] : recursive_counting_numbers(g, k)) CHECK(counting_number(g, Clique(members), k) == c);
    }
  }
}

TEST_CASE("region sets are valid") {
  Rng rng(4);
  for (int t = 0; t < 80; ++t) {
    const std::size_t n = uniform_index(rng, 1, 11);
    const auto g = random_graph(n, uniform(rng, 0.2, 0.9), rng);
    for (std::size_t k = 2; k <= clique_number(g) + 1; ++k) {
      CHECK(check_validity(build_kmax_regions(g, k), g).empty());
      CHECK(check_validity(build_kikuchi_regions(g, k), g).empty());
    }
  }
}

TEST_CASE("validity violations are reported") {
  const auto g = path_graph(3);
  auto set = build_kmax_regions(g, 2);
  for (auto& r : set.regions)
    if (r.variables == std::vector<NodeId>{1} && !r.node_factor) r.counting_number = 0;
  const auto v = check_validity(set, g);
  REQUIRE(v.size() == 1);
  CHECK(v[0].item == ValidityViolation::Item::variable);
  CHECK(v[0].u == 1);
  CHECK(v[0].sum == 3);
}

TEST_CASE("Kikuchi regions") {
  const auto k3 = build_kikuchi_regions(complete_graph(3), 3);
  CHECK(c_of(k3, {0, 1, 2}) == 1);
  CHECK(k3.find({0, 1}, true) == nullptr);
  for (NodeId i = 0; i < 3; ++i) CHECK(c_of(k3, {i}, false) == -1);

  const auto path = build_kikuchi_regions(path_graph(3), 2);
  CHECK(c_of(path, {0, 1}) == 1);
  CHECK(c_of(path, {1, 2}) == 1);
  CHECK(c_of(path, {1}, false) == -2);
  CHECK(c_of(path, {0}, false) == -1);

  const auto house = build_kikuchi_regions(house_graph(), 5);
  for (std::vector<NodeId> k : {std::vector<NodeId>{1, 2, 4}, {0, 1}, {0, 3}, {3, 4}}) CHECK(c_of(house, k) == 1);
  for (NodeId v : {0u, 1u, 3u, 4u}) {
    const Region* r = house.find({v}, false);
    REQUIRE(r != nullptr);
    CHECK(r->level == 1);
  }
  CHECK(house.find({2}, false) != nullptr);  // f_2 meets {1,2,4}
}

TEST_CASE("Kikuchi equivalence on random graphs") {
  CHECK(verify_kikuchi_equivalence(complete_graph(3), 3).ok());
  CHECK(verify_kikuchi_equivalence(complete_graph(3), 3).absent_with_zero == 3);
  Rng rng(6);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = uniform_index(rng, 2, 10);
    const auto g = random_graph(n, uniform(rng, 0.2, 0.8), rng);
    for (std::size_t k = 2; k <= clique_number(g) + 1; ++k) CHECK(verify_kikuchi_equivalence(g, k).ok());
  }
}
