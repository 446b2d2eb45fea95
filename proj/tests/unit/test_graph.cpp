#include <set>

#include "csma/chordality.hpp"
#include "csma/cliques.hpp"
#include "csma/graph.hpp"
#include "csma/throughput.hpp"
#include "doctest.h"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace csma;
using namespace csma::testing;

namespace {

std::vector<NodeSet> as_sets(const std::vector<Clique>& cs) {
  std::vector<NodeSet> out;
  for (const auto& c : cs) out.push_back(c.members);
  return out;
}

}  // namespace

TEST_CASE("graph construction normalizes and validates") {
  const std::vector<Edge> edges{{2, 1}, {0, 1}, {1, 2}};
  const ConflictGraph g(3, edges);
  CHECK(g.num_edges() == 2);
  CHECK(g.degree(1) == 2);
  CHECK(g.adjacent(2, 1));
  CHECK_FALSE(g.adjacent(0, 2));
  CHECK(g.edges()[0] == Edge(0, 1));

  const std::vector<Edge> loop{{1, 1}};
  CHECK_THROWS_AS(ConflictGraph(2, loop), std::invalid_argument);
  const std::vector<Edge> outside{{0, 5}};
  CHECK_THROWS_AS(ConflictGraph(2, outside), std::invalid_argument);
}

TEST_CASE("random geometric graphs") {
  CHECK(random_geometric_graph(1, 0.3, 7).num_edges() == 0);
  CHECK(random_geometric_graph(2, 1.5, 7).num_edges() == 1);
  CHECK_THROWS(random_geometric_graph(5, 0.0, 1));
  CHECK_THROWS(random_geometric_graph(0, 0.2, 1));

  const auto a = random_geometric_graph(100, 0.15, 42);
  const auto b = random_geometric_graph(100, 0.15, 42);
  CHECK(a == b);
  CHECK(*a.positions() == *b.positions());
  CHECK(a.seed() == std::optional<std::uint64_t>(42));
  CHECK_FALSE(a == random_geometric_graph(100, 0.15, 43));

  // Edges follow the strict distance rule on the stored positions.
  const auto& pos = *a.positions();
  std::size_t count = 0;
  for (NodeId i = 0; i < 100; ++i)
    for (NodeId j = i + 1; j < 100; ++j) {
      const double dx = pos[i].x - pos[j].x;
      const double dy = pos[i].y - pos[j].y;
      const bool close = std::sqrt(dx * dx + dy * dy) < 0.15;
      CHECK(close == a.adjacent(i, j));
      count += close;
    }
  CHECK(count == a.num_edges());

  // Edge counts for n = 100, R = 0.15 sit in the low hundreds.
  double mean = 0.0;
  for (std::uint64_t s = 1; s <= 20; ++s) mean += static_cast<double>(random_geometric_graph(100, 0.15, s).num_edges());
  mean /= 20.0;
  CHECK(mean > 200.0);
  CHECK(mean < 400.0);
}

TEST_CASE("clique enumeration examples") {
  CHECK(enumerate_cliques(complete_graph(3), 3).size() == 7);
  CHECK(enumerate_cliques(path_graph(3), 3).size() == 5);
  CHECK(enumerate_cliques(empty_graph(6), 4).size() == 6);

  const auto k3 = complete_graph(3);
  CHECK(count_containing_cliques(k3, Clique{0}, 2) == 2);
  CHECK(count_containing_cliques(k3, Clique{0, 1}, 3) == 1);
  CHECK(count_containing_cliques(path_graph(3), Clique{1}, 3) == 0);
  CHECK_THROWS(count_containing_cliques(k3, Clique{0, 1}, 2));
}

TEST_CASE("clique enumeration matches subset search") {
  Rng rng(11);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = uniform_index(rng, 1, 12);
    const auto g = random_graph(n, uniform(rng, 0.1, 0.9), rng);
    for (std::size_t k = 1; k <= std::min<std::size_t>(n, 6); ++k) {
      const auto lib = enumerate_cliques(g, k);
      REQUIRE(as_sets(lib) == brute_cliques(g, k));
      for (NodeId i = 0; i < n; ++i) {
        std::set<NodeSet> expected;
        for (const auto& c : brute_cliques(g, k))
          if (std::binary_search(c.begin(), c.end(), i)) expected.insert(c);
        std::set<NodeSet> got;
        for (const auto& c : cliques_containing(g, i, k)) got.insert(c.members);
        CHECK(got == expected);
      }
    }
    const auto all = brute_cliques(g, n);
    for (const auto& c : all) {
      for (std::size_t s = c.size() + 1; s <= n; ++s) {
        std::size_t expected = 0;
        for (const auto& o : all)
          if (o.size() == s && std::includes(o.begin(), o.end(), c.begin(), c.end())) ++expected;
        CHECK(count_containing_cliques(g, Clique(c), s) == expected);
      }
    }
    CHECK(as_sets(maximal_cliques(g)) == brute_maximal_cliques(g));
  }
}

TEST_CASE("maximal cliques examples") {
  CHECK(as_sets(maximal_cliques(complete_graph(3))) == std::vector<NodeSet>{{0, 1, 2}});
  CHECK(as_sets(maximal_cliques(path_graph(3))) == std::vector<NodeSet>{{0, 1}, {1, 2}});
  // {1,2},{1,4},{4,5},{2,3,5} in 1-based labels
  CHECK(as_sets(maximal_cliques(house_graph())) == std::vector<NodeSet>{{0, 1}, {0, 3}, {3, 4}, {1, 2, 4}});
  CHECK(clique_number(house_graph()) == 3);
  CHECK(clique_number(empty_graph(4)) == 1);
}

TEST_CASE("chordality") {
  CHECK(is_chordal(path_graph(6)).chordal);
  CHECK(is_chordal(star_graph(5)).chordal);
  CHECK_FALSE(is_chordal(cycle_graph(4)).chordal);
  CHECK_FALSE(is_chordal(house_graph()).chordal);
  CHECK(is_chordal(complete_graph(5)).chordal);

  Rng rng(5);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = uniform_index(rng, 1, 10);
    const auto g = random_graph(n, uniform(rng, 0.1, 0.9), rng);
    const auto r = is_chordal(g);
    REQUIRE(r.chordal == brute_is_chordal(g));
    if (r.chordal) CHECK(is_perfect_elimination_order(g, r.elimination_order));
  }
  for (int t = 0; t < 100; ++t) {
    const auto g = random_chordal_graph(uniform_index(rng, 1, 14), rng);
    CHECK(is_chordal(g).chordal);
    CHECK(brute_is_chordal(g));
  }
}

TEST_CASE("clique trees") {
  const auto p = clique_tree(path_graph(3));
  REQUIRE(p.cliques.size() == 2);
  REQUIRE(p.edges.size() == 1);
  CHECK(p.separators[0] == std::vector<NodeId>{1});

  const auto k = clique_tree(complete_graph(3));
  CHECK(k.cliques.size() == 1);
  CHECK(k.edges.empty());

  CHECK_THROWS_AS(clique_tree(cycle_graph(4)), NotChordal);

  Rng rng(9);
  for (int t = 0; t < 200; ++t) {
    const auto g = random_chordal_graph(uniform_index(rng, 1, 16), rng, 0.8);
    const auto tree = clique_tree(g);
    CHECK(is_spanning_tree(tree));
    CHECK(has_running_intersection(tree, g.size()));
    const auto shuffled = clique_tree(g, rng());
    CHECK(has_running_intersection(shuffled, g.size()));
  }

  // A chain of cliques is not a clique tree when the running intersection fails.
  CliqueTree bad;
  bad.cliques = {Clique{0, 1}, Clique{1, 2}, Clique{2, 3}, Clique{1, 4}};
  bad.edges = {{0, 2}, {2, 1}, {2, 3}};
  bad.separators = {{}, {2}, {}};
  CHECK(is_spanning_tree(bad));
  CHECK_FALSE(has_running_intersection(bad, 5));
}
