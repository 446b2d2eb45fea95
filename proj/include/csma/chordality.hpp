#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "csma/cliques.hpp"
#include "csma/graph.hpp"

namespace csma {

struct ChordalityResult {
  bool chordal = false;
  // Perfect elimination ordering (each node simplicial among the nodes after
  // it); empty when the graph is not chordal.
  std::vector<NodeId> elimination_order;
};

// Maximum-cardinality search followed by a check of the produced ordering.
ChordalityResult is_chordal(const ConflictGraph& g);

bool is_perfect_elimination_order(const ConflictGraph& g, std::span<const NodeId> order);

struct CliqueTree {
  std::vector<Clique> cliques;                               // maximal cliques
  std::vector<std::pair<std::size_t, std::size_t>> edges;    // indices into cliques
  std::vector<std::vector<NodeId>> separators;               // K ∩ K' per edge, may be empty

  std::size_t size() const { return cliques.size(); }
};

// Maximum-weight spanning tree of the clique intersection graph weighted by
// |K ∩ K'|. Ties are broken by lexicographic clique-index pair, or in a
// seeded random order when `tie_break_seed` is given. Disconnected graphs
// are joined through empty separators. Throws NotChordal.
CliqueTree clique_tree(const ConflictGraph& g, std::optional<std::uint64_t> tie_break_seed = std::nullopt);

// m-1 edges, connected, acyclic.
bool is_spanning_tree(const CliqueTree& t);

// For every node v the tree nodes whose cliques contain v induce a connected subtree.
bool has_running_intersection(const CliqueTree& t, std::size_t n);

}  // namespace csma
