#include "csma/regions.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace csma {

bool Region::is_subset_of(const Region& o) const {
  if (node_factor && node_factor != o.node_factor) return false;
  return sorted_includes(o.variables, variables) &&
         std::includes(o.factor_edges.begin(), o.factor_edges.end(), factor_edges.begin(),
                       factor_edges.end());
}

std::string to_string(RegionKind k) {
  switch (k) {
    case RegionKind::bethe: return "bethe";
    case RegionKind::triangle: return "triangle";
    case RegionKind::kmax_clique: return "kmax_clique";
    case RegionKind::kikuchi: return "kikuchi";
    case RegionKind::chordal: return "chordal";
  }
  return "unknown";
}

bool scope_less(const Region& a, const Region& b) {
  if (a.node_factor.has_value() != b.node_factor.has_value()) return a.node_factor.has_value();
  if (a.node_factor != b.node_factor) return *a.node_factor < *b.node_factor;
  if (a.variables.size() != b.variables.size()) return a.variables.size() < b.variables.size();
  if (a.variables != b.variables) return a.variables < b.variables;
  return a.factor_edges < b.factor_edges;
}

void RegionSet::canonicalize() {
  std::sort(regions.begin(), regions.end(), scope_less);
  std::vector<Region> merged;
  merged.reserve(regions.size());
  for (auto& r : regions) {
    if (!merged.empty() && merged.back().same_scope(r)) {
      merged.back().counting_number += r.counting_number;
      merged.back().level = std::min(merged.back().level, r.level);
    } else {
      merged.push_back(std::move(r));
    }
  }
  regions = std::move(merged);
}

const Region* RegionSet::find(const std::vector<NodeId>& variables, bool with_factors) const {
  for (const auto& r : regions) {
    if (r.node_factor || r.variables != variables) continue;
    if (with_factors == !r.factor_edges.empty()) return &r;
  }
  return nullptr;
}

Region node_factor_region(NodeId i) {
  Region r;
  r.variables = {i};
  r.node_factor = i;
  r.counting_number = 1;
  return r;
}

Region variable_region(NodeId i) {
  Region r;
  r.variables = {i};
  return r;
}

Region clique_region(std::span<const NodeId> nodes) {
  Region r;
  r.variables.assign(nodes.begin(), nodes.end());
  std::sort(r.variables.begin(), r.variables.end());
  for (std::size_t a = 0; a < r.variables.size(); ++a)
    for (std::size_t b = a + 1; b < r.variables.size(); ++b)
      r.factor_edges.emplace_back(r.variables[a], r.variables[b]);
  return r;
}

std::int64_t counting_number(const ConflictGraph& g, const Clique& k, std::size_t k_max) {
  if (k.size() == 0 || k.size() > k_max) {
    throw std::invalid_argument("counting_number requires 1 <= |K| <= k_max");
  }
  std::int64_t c = k.size() > 1 ? 1 : 0;
  const std::size_t top = std::min(k_max, g.size());
  for (std::size_t s = k.size() + 1; s <= top; ++s) {
    const auto count = static_cast<std::int64_t>(count_containing_cliques(g, k, s));
    if (count == 0) break;  // no clique of size s contains K, hence none larger
    c += ((s - k.size()) % 2 == 0) ? count : -count;
  }
  return c;
}

RegionSet build_kmax_regions(const ConflictGraph& g, std::size_t k_max) {
  if (k_max < 2) throw std::invalid_argument("build_kmax_regions requires k_max >= 2");
  RegionSet set;
  set.kind = k_max == 2 ? RegionKind::bethe : (k_max == 3 ? RegionKind::triangle : RegionKind::kmax_clique);
  set.k_max = k_max;
  set.n = g.size();

  const auto cliques = enumerate_cliques(g, std::min(k_max, g.size()));
  set.regions.reserve(cliques.size() + g.size());
  for (NodeId i = 0; i < g.size(); ++i) set.regions.push_back(node_factor_region(i));
  for (const auto& k : cliques) {
    Region r = k.size() == 1 ? variable_region(k.members.front()) : clique_region(k.members);
    r.counting_number = counting_number(g, k, k_max);
    set.regions.push_back(std::move(r));
  }
  set.canonicalize();
  return set;
}

std::vector<ValidityViolation> check_validity(const RegionSet& set, const ConflictGraph& g) {
  std::vector<ValidityViolation> out;
  std::vector<std::int64_t> var_sum(g.size(), 0);
  std::vector<std::int64_t> node_factor_sum(g.size(), 0);
  std::map<Edge, std::int64_t> edge_sum;
  for (const Edge& e : g.edges()) edge_sum[e] = 0;

  for (const auto& r : set.regions) {
    for (const Edge& e : r.factor_edges) {
      if (!sorted_includes(r.variables, std::vector<NodeId>{e.u, e.v}) || !g.adjacent(e.u, e.v)) {
        out.push_back({ValidityViolation::Item::scope, e.u, e.v, 0});
      }
      edge_sum[e] += r.counting_number;
    }
    if (r.node_factor) {
      if (!std::binary_search(r.variables.begin(), r.variables.end(), *r.node_factor)) {
        out.push_back({ValidityViolation::Item::scope, *r.node_factor, *r.node_factor, 0});
      }
      node_factor_sum[*r.node_factor] += r.counting_number;
    }
    for (NodeId v : r.variables) var_sum[v] += r.counting_number;
  }
  for (NodeId i = 0; i < g.size(); ++i) {
    if (var_sum[i] != 1) out.push_back({ValidityViolation::Item::variable, i, i, var_sum[i]});
    if (node_factor_sum[i] != 1) out.push_back({ValidityViolation::Item::node_factor, i, i, node_factor_sum[i]});
  }
  for (const auto& [e, s] : edge_sum)
    if (s != 1) out.push_back({ValidityViolation::Item::edge_factor, e.u, e.v, s});
  return out;
}

std::string describe(const Region& r) {
  std::ostringstream os;
  if (r.node_factor) {
    os << "f_" << *r.node_factor;
    return os.str();
  }
  os << (r.factor_edges.empty() ? "x{" : "{");
  for (std::size_t k = 0; k < r.variables.size(); ++k) os << (k ? "," : "") << r.variables[k];
  os << "}";
  return os.str();
}

}  // namespace csma
