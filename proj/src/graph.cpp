#include "csma/graph.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace csma {

ConflictGraph::ConflictGraph(std::size_t n, std::span<const Edge> edges) : adjacency_(n) {
  edges_.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u == e.v) {
      throw std::invalid_argument("self-loop on node " + std::to_string(e.u));
    }
    if (e.v >= n) {
      throw std::invalid_argument("edge endpoint " + std::to_string(e.v) + " out of range for n=" +
                                  std::to_string(n));
    }
    edges_.push_back(e);
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (const Edge& e : edges_) {
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

bool ConflictGraph::adjacent(NodeId i, NodeId j) const {
  const auto& nbrs = adjacency_[i];
  return std::binary_search(nbrs.begin(), nbrs.end(), j);
}

ConflictGraph ConflictGraph::with_metadata(std::vector<Point> positions,
                                           std::optional<std::uint64_t> seed) const {
  if (!positions.empty() && positions.size() != size()) {
    throw std::invalid_argument("positions must have one entry per node");
  }
  ConflictGraph g = *this;
  if (positions.empty()) {
    g.positions_.reset();
  } else {
    g.positions_ = std::move(positions);
  }
  g.seed_ = seed;
  return g;
}

namespace {

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

ConflictGraph random_geometric_graph(std::size_t n, double radius, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("random_geometric_graph: n must be at least 1");
  if (!(radius > 0.0)) throw std::invalid_argument("random_geometric_graph: radius must be positive");

  std::mt19937_64 rng(seed);
  std::vector<Point> pos(n);
  for (auto& p : pos) {
    p.x = unit_uniform(rng);
    p.y = unit_uniform(rng);
  }
  const double r2 = radius * radius;
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      const double dx = pos[i].x - pos[j].x;
      const double dy = pos[i].y - pos[j].y;
      if (dx * dx + dy * dy < r2) edges.emplace_back(i, j);
    }
  }
  return ConflictGraph(n, edges).with_metadata(std::move(pos), seed);
}

ConflictGraph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return ConflictGraph(n, edges);
}

ConflictGraph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return ConflictGraph(n, edges);
}

ConflictGraph cycle_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  if (n >= 3) edges.emplace_back(0, static_cast<NodeId>(n - 1));
  return ConflictGraph(n, edges);
}

ConflictGraph star_graph(std::size_t leaves) {
  std::vector<Edge> edges;
  for (NodeId j = 1; j <= leaves; ++j) edges.emplace_back(0, j);
  return ConflictGraph(leaves + 1, edges);
}

ConflictGraph empty_graph(std::size_t n) { return ConflictGraph(n, {}); }

std::vector<NodeId> sorted_intersection(std::span<const NodeId> a, std::span<const NodeId> b) {
  std::vector<NodeId> out;
  out.reserve(std::min(a.size(), b.size()));
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool sorted_includes(std::span<const NodeId> super, std::span<const NodeId> sub) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

}  // namespace csma
