#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "csma/cliques.hpp"
#include "csma/graph.hpp"

namespace csma {

// A region of the factor graph: a set of link variables, the pairwise
// conflict factors f_(i,j) it holds, optionally the node factor f_i, and an
// integer counting number.
struct Region {
  std::vector<NodeId> variables;     // sorted
  std::vector<Edge> factor_edges;    // sorted
  std::optional<NodeId> node_factor;
  std::int64_t counting_number = 0;
  std::size_t level = 0;             // Kikuchi hierarchy level, 0 for other kinds

  bool same_scope(const Region& o) const {
    return variables == o.variables && factor_edges == o.factor_edges && node_factor == o.node_factor;
  }
  // R ⊆ R' iff both the variable and the factor sets are included.
  bool is_subset_of(const Region& o) const;
};

// Scope order used by RegionSet::canonicalize: node-factor regions first,
// then by variable count, variables, factors.
bool scope_less(const Region& a, const Region& b);

enum class RegionKind { bethe, triangle, kmax_clique, kikuchi, chordal };

std::string to_string(RegionKind k);

struct RegionSet {
  RegionKind kind = RegionKind::kmax_clique;
  std::size_t k_max = 0;  // requested cap, 0 when not applicable
  std::size_t n = 0;
  std::vector<Region> regions;

  // Merges regions with identical scope (summing counting numbers) and sorts
  // them: node-factor regions, then by variable count, variables, factors.
  void canonicalize();

  const Region* find(const std::vector<NodeId>& variables, bool with_factors) const;
};

Region node_factor_region(NodeId i);           // R_{f_i}
Region variable_region(NodeId i);              // R_{x_i}
Region clique_region(std::span<const NodeId> nodes);  // all conflict factors among `nodes`

// c_{R(K)} = 1{|K|>1} + sum_{s=|K|+1}^{k_max} (-1)^{s-|K|} n_{K,s}.
// For |K| = 1 this is the counting number of R_{x_i}.
std::int64_t counting_number(const ConflictGraph& g, const Clique& k, std::size_t k_max);

// One region per clique of size 2..k_max, plus R_{f_i} (c = 1) and R_{x_i}
// (c from the singleton counting number) for every node.
RegionSet build_kmax_regions(const ConflictGraph& g, std::size_t k_max);

struct ValidityViolation {
  enum class Item { variable, node_factor, edge_factor, scope };
  Item item;
  NodeId u = 0;
  NodeId v = 0;           // second endpoint for edge factors
  std::int64_t sum = 0;   // sum of counting numbers of containing regions
};

// Checks that every factor's arguments lie in its region, and that the
// counting numbers of the regions holding any variable or factor sum to 1.
std::vector<ValidityViolation> check_validity(const RegionSet& set, const ConflictGraph& g);

std::string describe(const Region& r);

}  // namespace csma
