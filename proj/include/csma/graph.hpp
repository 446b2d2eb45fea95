#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace csma {

using NodeId = std::uint32_t;

// Unordered node pair stored with first < second.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  Edge() = default;
  Edge(NodeId a, NodeId b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

// Undirected conflict graph over links 0..n-1. Immutable after construction;
// neighbor lists are kept sorted so that set operations are linear merges.
class ConflictGraph {
 public:
  ConflictGraph() = default;

  // Throws std::invalid_argument on self-loops or out-of-range endpoints.
  // Duplicate edges are collapsed.
  ConflictGraph(std::size_t n, std::span<const Edge> edges);

  std::size_t size() const { return adjacency_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  std::span<const NodeId> neighbors(NodeId i) const { return adjacency_[i]; }
  std::size_t degree(NodeId i) const { return adjacency_[i].size(); }
  bool adjacent(NodeId i, NodeId j) const;

  // Lexicographically sorted.
  std::span<const Edge> edges() const { return edges_; }

  const std::optional<std::vector<Point>>& positions() const { return positions_; }
  const std::optional<std::uint64_t>& seed() const { return seed_; }

  ConflictGraph with_metadata(std::vector<Point> positions, std::optional<std::uint64_t> seed) const;

  friend bool operator==(const ConflictGraph& a, const ConflictGraph& b) {
    return a.adjacency_ == b.adjacency_;
  }

 private:
  std::vector<std::vector<NodeId>> adjacency_;
  std::vector<Edge> edges_;
  std::optional<std::vector<Point>> positions_;
  std::optional<std::uint64_t> seed_;
};

// Nodes uniform in the unit square, edge iff Euclidean distance < radius.
// Bit-reproducible for fixed (n, radius, seed): uniforms are drawn from
// std::mt19937_64 by taking the top 53 bits, so no implementation-defined
// distribution is involved.
ConflictGraph random_geometric_graph(std::size_t n, double radius, std::uint64_t seed);

// Common graph families, mostly for tests and examples.
ConflictGraph complete_graph(std::size_t n);
ConflictGraph path_graph(std::size_t n);
ConflictGraph cycle_graph(std::size_t n);
ConflictGraph star_graph(std::size_t leaves);  // center is node 0
ConflictGraph empty_graph(std::size_t n);

// Intersection of two sorted node lists.
std::vector<NodeId> sorted_intersection(std::span<const NodeId> a, std::span<const NodeId> b);
bool sorted_includes(std::span<const NodeId> super, std::span<const NodeId> sub);

}  // namespace csma
