#pragma once

// Ordered one-element clique extension shared by the clique enumerators and
// the per-node rate kernels.

#include <cstddef>
#include <span>
#include <vector>

#include "csma/graph.hpp"

namespace csma::detail {

// Depth-first walk over the cliques formed by `base` plus a subset of
// `candidates` (sorted, every candidate adjacent to all of `base`). A clique
// is only extended by candidates larger than its last added member, so each
// clique is visited exactly once. `visit(members, added, depth)` is invoked
// for every extension where `depth` counts the added candidates (>= 1).
// Extensions stop once the clique holds `max_size` nodes.
template <typename Visit>
void walk_extensions(const ConflictGraph& g, std::vector<NodeId>& members,
                     std::span<const NodeId> candidates, std::size_t max_size, std::size_t depth,
                     Visit& visit) {
  if (members.size() >= max_size) return;
  std::vector<NodeId> next;
  for (std::size_t idx = 0; idx < candidates.size(); ++idx) {
    const NodeId c = candidates[idx];
    members.push_back(c);
    visit(std::span<const NodeId>(members), c, depth + 1);
    if (members.size() < max_size && idx + 1 < candidates.size()) {
      next = sorted_intersection(candidates.subspan(idx + 1), g.neighbors(c));
      if (!next.empty()) {
        const std::vector<NodeId> local = std::move(next);
        walk_extensions(g, members, local, max_size, depth + 1, visit);
      }
    }
    members.pop_back();
  }
}

// Neighbors of `root` with larger id.
inline std::vector<NodeId> upper_neighbors(const ConflictGraph& g, NodeId root) {
  const auto nbrs = g.neighbors(root);
  std::vector<NodeId> out;
  for (NodeId v : nbrs)
    if (v > root) out.push_back(v);
  return out;
}

}  // namespace csma::detail
