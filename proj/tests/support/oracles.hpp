#pragma once

// Deliberately naive reference computations used to check the library.

#include <cstdint>
#include <map>
#include <vector>

#include "csma/graph.hpp"

namespace csma::testing {

using NodeSet = std::vector<NodeId>;

std::vector<std::vector<bool>> adjacency_matrix(const ConflictGraph& g);

// All vertex subsets of size 1..k_max inducing complete subgraphs, ordered by (size, members).
std::vector<NodeSet> brute_cliques(const ConflictGraph& g, std::size_t k_max);
std::vector<NodeSet> brute_maximal_cliques(const ConflictGraph& g);

// Chordality by repeatedly deleting simplicial vertices.
bool brute_is_chordal(const ConflictGraph& g);

// Counting numbers from the defining relation, largest cliques first:
// c_K = 1{|K|>1} - sum of c over cliques of size <= k_max strictly containing K.
std::map<NodeSet, std::int64_t> recursive_counting_numbers(const ConflictGraph& g, std::size_t k_max);

// nu_i = phi_i (1-phi_i)^{-(1 + c_{x_i})} prod_{|K| >= 2, K containing i} (1 - sum_K phi)^{-c_K}
// with the recursive counting numbers; plain products, no logs.
std::vector<double> direct_region_rates(const ConflictGraph& g, const std::vector<double>& phi, std::size_t k_max);

// Independent sets by scanning all 2^n masks.
std::vector<std::uint64_t> brute_independent_sets(const ConflictGraph& g);

struct BruteForward {
  std::vector<double> phi;
  double Z = 0.0;
  std::vector<double> state_probability;  // aligned with brute_independent_sets
};
BruteForward brute_forward(const ConflictGraph& g, const std::vector<double>& nu);

}  // namespace csma::testing
