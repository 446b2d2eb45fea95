#include "csma/chordality.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <tuple>

#include "csma/throughput.hpp"

namespace csma {

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

}  // namespace

bool is_perfect_elimination_order(const ConflictGraph& g, std::span<const NodeId> order) {
  const std::size_t n = g.size();
  if (order.size() != n) return false;
  std::vector<std::size_t> pos(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    if (order[k] >= n || pos[order[k]] != n) return false;
    pos[order[k]] = k;
  }
  std::vector<NodeId> later;
  for (NodeId v : order) {
    later.clear();
    for (NodeId u : g.neighbors(v))
      if (pos[u] > pos[v]) later.push_back(u);
    if (later.size() < 2) continue;
    const NodeId parent = *std::min_element(later.begin(), later.end(),
                                            [&](NodeId a, NodeId b) { return pos[a] < pos[b]; });
    for (NodeId u : later)
      if (u != parent && !g.adjacent(parent, u)) return false;
  }
  return true;
}

ChordalityResult is_chordal(const ConflictGraph& g) {
  const std::size_t n = g.size();
  // Maximum-cardinality search: repeatedly number the unnumbered node with
  // the most numbered neighbors (ties to the smaller id). The reverse of the
  // visiting order is a perfect elimination ordering iff g is chordal.
  std::vector<std::size_t> weight(n, 0);
  std::vector<bool> numbered(n, false);
  std::vector<NodeId> visit;
  visit.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    NodeId best = 0;
    bool found = false;
    for (NodeId v = 0; v < n; ++v) {
      if (numbered[v]) continue;
      if (!found || weight[v] > weight[best]) {
        best = v;
        found = true;
      }
    }
    numbered[best] = true;
    visit.push_back(best);
    for (NodeId u : g.neighbors(best))
      if (!numbered[u]) ++weight[u];
  }
  std::reverse(visit.begin(), visit.end());
  ChordalityResult r;
  r.chordal = is_perfect_elimination_order(g, visit);
  if (r.chordal) r.elimination_order = std::move(visit);
  return r;
}

CliqueTree clique_tree(const ConflictGraph& g, std::optional<std::uint64_t> tie_break_seed) {
  if (!is_chordal(g).chordal) throw NotChordal("clique tree requested for a non-chordal graph");

  CliqueTree t;
  t.cliques = maximal_cliques(g);
  const std::size_t m = t.cliques.size();

  struct Candidate {
    std::size_t weight;
    std::size_t rank;
    std::size_t a;
    std::size_t b;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(m * (m - (m > 0 ? 1 : 0)) / 2);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b)
      candidates.push_back({sorted_intersection(t.cliques[a].members, t.cliques[b].members).size(),
                            candidates.size(), a, b});
  if (tie_break_seed) {
    std::vector<std::size_t> ranks(candidates.size());
    std::iota(ranks.begin(), ranks.end(), 0);
    std::mt19937_64 rng(*tie_break_seed);
    std::shuffle(ranks.begin(), ranks.end(), rng);
    for (std::size_t k = 0; k < candidates.size(); ++k) candidates[k].rank = ranks[k];
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) {
    return std::tie(y.weight, x.rank) < std::tie(x.weight, y.rank);
  });

  DisjointSets sets(m);
  for (const Candidate& c : candidates) {
    if (t.edges.size() + 1 == m) break;
    if (sets.unite(c.a, c.b)) {
      t.edges.emplace_back(c.a, c.b);
      t.separators.push_back(sorted_intersection(t.cliques[c.a].members, t.cliques[c.b].members));
    }
  }
  return t;
}

bool is_spanning_tree(const CliqueTree& t) {
  const std::size_t m = t.cliques.size();
  if (m == 0) return t.edges.empty();
  if (t.edges.size() != m - 1 || t.separators.size() != t.edges.size()) return false;
  DisjointSets sets(m);
  for (auto [a, b] : t.edges) {
    if (a >= m || b >= m || !sets.unite(a, b)) return false;
  }
  return true;
}

bool has_running_intersection(const CliqueTree& t, std::size_t n) {
  if (!is_spanning_tree(t)) return false;
  // On a tree, a vertex subset with s members induces a connected subgraph
  // iff it spans exactly s-1 tree edges.
  std::vector<std::size_t> holders(n, 0);
  std::vector<std::size_t> links(n, 0);
  for (const auto& c : t.cliques)
    for (NodeId v : c.members) {
      if (v >= n) return false;
      ++holders[v];
    }
  for (auto [a, b] : t.edges)
    for (NodeId v : sorted_intersection(t.cliques[a].members, t.cliques[b].members)) ++links[v];
  for (std::size_t v = 0; v < n; ++v)
    if (holders[v] > 0 && links[v] + 1 != holders[v]) return false;
  return true;
}

}  // namespace csma
