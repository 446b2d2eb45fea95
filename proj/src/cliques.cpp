#include "csma/cliques.hpp"

#include <algorithm>
#include <stdexcept>

#include "clique_walk.hpp"
#include "csma/kernels.hpp"

namespace csma {

Clique::Clique(std::vector<NodeId> m) : members(std::move(m)) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
}

bool Clique::contains(NodeId v) const { return std::binary_search(members.begin(), members.end(), v); }

std::strong_ordering operator<=>(const Clique& a, const Clique& b) {
  if (auto c = a.members.size() <=> b.members.size(); c != 0) return c;
  return a.members <=> b.members;
}

bool is_clique(const ConflictGraph& g, std::span<const NodeId> nodes) {
  for (std::size_t a = 0; a < nodes.size(); ++a)
    for (std::size_t b = a + 1; b < nodes.size(); ++b)
      if (nodes[a] == nodes[b] || !g.adjacent(nodes[a], nodes[b])) return false;
  return true;
}

std::vector<Clique> enumerate_cliques(const ConflictGraph& g, std::size_t k_max) {
  return kernels::omp::enumerate_cliques(g, k_max);
}

std::vector<Clique> cliques_containing(const ConflictGraph& g, NodeId i, std::size_t k_max) {
  std::vector<Clique> out;
  if (k_max == 0) return out;
  std::vector<NodeId> members{i};
  out.emplace_back(members);
  const auto nbrs = g.neighbors(i);
  const std::vector<NodeId> candidates(nbrs.begin(), nbrs.end());
  auto visit = [&](std::span<const NodeId> m, NodeId, std::size_t) {
    out.emplace_back(std::vector<NodeId>(m.begin(), m.end()));
  };
  detail::walk_extensions(g, members, candidates, k_max, 0, visit);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t count_containing_cliques(const ConflictGraph& g, const Clique& k, std::size_t s) {
  if (s <= k.size()) {
    throw std::invalid_argument("count_containing_cliques: s must exceed the clique size");
  }
  // (s - |K|)-cliques inside the common neighborhood of K.
  std::vector<NodeId> common;
  if (k.members.empty()) {
    common.resize(g.size());
    for (NodeId v = 0; v < g.size(); ++v) common[v] = v;
  } else {
    const auto first = g.neighbors(k.members.front());
    common.assign(first.begin(), first.end());
    for (std::size_t idx = 1; idx < k.members.size() && !common.empty(); ++idx) {
      common = sorted_intersection(common, g.neighbors(k.members[idx]));
    }
  }
  const std::size_t extra = s - k.size();
  std::size_t count = 0;
  std::vector<NodeId> members;
  auto visit = [&](std::span<const NodeId>, NodeId, std::size_t depth) {
    if (depth == extra) ++count;
  };
  detail::walk_extensions(g, members, common, extra, 0, visit);
  return count;
}

namespace {

// Bron-Kerbosch with Tomita pivoting on sorted vectors.
void bron_kerbosch(const ConflictGraph& g, std::vector<NodeId>& r, std::vector<NodeId> p,
                   std::vector<NodeId> x, std::vector<Clique>& out) {
  if (p.empty()) {
    if (x.empty()) out.emplace_back(r);
    return;
  }
  NodeId pivot = p.front();
  std::size_t best = 0;
  auto consider = [&](NodeId u) {
    const std::size_t cover = sorted_intersection(p, g.neighbors(u)).size();
    if (cover > best || (cover == best && u < pivot)) {
      best = cover;
      pivot = u;
    }
  };
  best = sorted_intersection(p, g.neighbors(pivot)).size();
  for (NodeId u : p) consider(u);
  for (NodeId u : x) consider(u);

  std::vector<NodeId> branch;
  std::set_difference(p.begin(), p.end(), g.neighbors(pivot).begin(), g.neighbors(pivot).end(),
                      std::back_inserter(branch));
  for (NodeId v : branch) {
    r.push_back(v);
    bron_kerbosch(g, r, sorted_intersection(p, g.neighbors(v)), sorted_intersection(x, g.neighbors(v)), out);
    r.pop_back();
    p.erase(std::lower_bound(p.begin(), p.end(), v));
    x.insert(std::lower_bound(x.begin(), x.end(), v), v);
  }
}

}  // namespace

std::vector<Clique> maximal_cliques(const ConflictGraph& g) {
  std::vector<Clique> out;
  std::vector<NodeId> r;
  std::vector<NodeId> p(g.size());
  for (NodeId v = 0; v < g.size(); ++v) p[v] = v;
  bron_kerbosch(g, r, std::move(p), {}, out);
  for (auto& c : out) std::sort(c.members.begin(), c.members.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t clique_number(const ConflictGraph& g) {
  std::size_t best = 0;
  for (const auto& c : maximal_cliques(g)) best = std::max(best, c.size());
  return best;
}

}  // namespace csma
