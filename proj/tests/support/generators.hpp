#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "csma/graph.hpp"
#include "csma/throughput.hpp"

namespace csma::testing {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi);
std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi);  // inclusive

// G(n, p).
ConflictGraph random_graph(std::size_t n, double p, Rng& rng);

// Random chordal graph: node v joins a random subset of the closed neighborhood
// some earlier node had when it was added, so v is simplicial at insertion.
// `attach` is the probability of joining at all (otherwise v starts isolated).
ConflictGraph random_chordal_graph(std::size_t n, Rng& rng, double attach = 0.9);

// Positive targets rescaled so that the largest maximal-clique sum equals `peak`.
ThroughputVector random_feasible_targets(const ConflictGraph& g, double peak, Rng& rng);

// Every labelled graph on n nodes (n <= 6), by edge bitmask.
ConflictGraph graph_from_mask(std::size_t n, std::uint64_t mask);
std::uint64_t edge_slots(std::size_t n);  // n (n - 1) / 2

// The example graph with edges 1-2, 2-3, 2-5, 3-5, 4-5, 1-4, relabelled 0..4.
ConflictGraph house_graph();

}  // namespace csma::testing
