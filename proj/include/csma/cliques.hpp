#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "csma/graph.hpp"

namespace csma {

// A clique in canonical form: members strictly increasing.
struct Clique {
  std::vector<NodeId> members;

  Clique() = default;
  explicit Clique(std::vector<NodeId> m);  // sorts and dedups
  Clique(std::initializer_list<NodeId> m) : Clique(std::vector<NodeId>(m)) {}

  std::size_t size() const { return members.size(); }
  bool contains(NodeId v) const;

  friend bool operator==(const Clique&, const Clique&) = default;
  // Orders by size first, then lexicographically.
  friend std::strong_ordering operator<=>(const Clique& a, const Clique& b);
};

bool is_clique(const ConflictGraph& g, std::span<const NodeId> nodes);

// Every clique of size 1..k_max exactly once, ordered by (size, members).
// Parallel over the minimum member of each clique.
std::vector<Clique> enumerate_cliques(const ConflictGraph& g, std::size_t k_max);

// Cliques of size 1..k_max containing node i, found by ordered one-element
// extensions inside the neighborhood of i.
std::vector<Clique> cliques_containing(const ConflictGraph& g, NodeId i, std::size_t k_max);

// n_{K,s}: the number of size-s cliques that strictly contain K.
// Throws std::invalid_argument unless s > |K|.
std::size_t count_containing_cliques(const ConflictGraph& g, const Clique& k, std::size_t s);

// Inclusion-maximal cliques (Bron-Kerbosch with pivoting), ordered by (size, members).
// Isolated nodes appear as singleton cliques.
std::vector<Clique> maximal_cliques(const ConflictGraph& g);

// Size of the largest clique; 0 for the empty graph on zero nodes.
std::size_t clique_number(const ConflictGraph& g);

}  // namespace csma
