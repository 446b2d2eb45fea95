#include "csma/kikuchi.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace csma {

namespace {

Region intersect(const Region& a, const Region& b) {
  Region r;
  r.variables = sorted_intersection(a.variables, b.variables);
  std::set_intersection(a.factor_edges.begin(), a.factor_edges.end(), b.factor_edges.begin(),
                        b.factor_edges.end(), std::back_inserter(r.factor_edges));
  if (a.node_factor && a.node_factor == b.node_factor) r.node_factor = a.node_factor;
  return r;
}

bool strict_subset(const Region& a, const Region& b) { return !a.same_scope(b) && a.is_subset_of(b); }

}  // namespace

RegionSet build_kikuchi_regions_from(const ConflictGraph& g, const std::vector<Clique>& base) {
  RegionSet set;
  set.kind = RegionKind::kikuchi;
  set.n = g.size();

  std::vector<Region>& all = set.regions;
  for (NodeId i = 0; i < g.size(); ++i) all.push_back(node_factor_region(i));
  for (const auto& k : base) {
    if (k.size() < 2) continue;
    all.push_back(clique_region(k.members));
  }
  std::sort(all.begin(), all.end(), scope_less);
  all.erase(std::unique(all.begin(), all.end(), [](const Region& a, const Region& b) { return a.same_scope(b); }),
            all.end());

  std::size_t level_begin = 0;
  for (std::size_t level = 1;; ++level) {
    const std::size_t level_end = all.size();
    std::vector<Region> next;
    for (std::size_t a = level_begin; a < level_end; ++a) {
      for (std::size_t b = 0; b < level_end; ++b) {
        if (a == b) continue;
        if (all[a].is_subset_of(all[b]) || all[b].is_subset_of(all[a])) continue;
        Region r = intersect(all[a], all[b]);
        if (r.variables.empty()) continue;
        next.push_back(std::move(r));
      }
    }
    std::sort(next.begin(), next.end(), scope_less);
    next.erase(std::unique(next.begin(), next.end(), [](const Region& x, const Region& y) { return x.same_scope(y); }),
               next.end());
    // drop scopes already present
    std::erase_if(next, [&](const Region& r) {
      return std::any_of(all.begin(), all.end(), [&](const Region& o) { return o.same_scope(r); });
    });
    // drop regions dominated by another candidate of the same level
    std::vector<Region> kept;
    for (std::size_t x = 0; x < next.size(); ++x) {
      bool dominated = false;
      for (std::size_t y = 0; y < next.size() && !dominated; ++y)
        dominated = x != y && strict_subset(next[x], next[y]);
      if (!dominated) kept.push_back(std::move(next[x]));
    }
    if (kept.empty()) break;
    for (auto& r : kept) {
      r.level = level;
      all.push_back(std::move(r));
    }
    level_begin = level_end;
  }

  // A strict super-region holds strictly more items, so visiting regions by
  // decreasing item count settles every superset first.
  auto items = [](const Region& r) {
    return r.variables.size() + r.factor_edges.size() + (r.node_factor ? 1 : 0);
  };
  std::vector<std::size_t> order(all.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return items(all[a]) > items(all[b]); });
  for (std::size_t r : order) {
    std::int64_t c = 1;
    for (std::size_t o = 0; o < all.size(); ++o) {
      if (items(all[o]) > items(all[r]) && strict_subset(all[r], all[o])) c -= all[o].counting_number;
    }
    all[r].counting_number = c;
  }
  set.canonicalize();
  return set;
}

RegionSet build_kikuchi_regions(const ConflictGraph& g, std::size_t k_max) {
  if (k_max < 2) throw std::invalid_argument("build_kikuchi_regions requires k_max >= 2");
  std::vector<Clique> base;
  for (auto& k : maximal_cliques(g))
    if (k.size() >= 2 && k.size() < k_max) base.push_back(std::move(k));
  for (auto& k : enumerate_cliques(g, k_max))
    if (k.size() == k_max) base.push_back(std::move(k));
  RegionSet set = build_kikuchi_regions_from(g, base);
  set.k_max = k_max;
  return set;
}

KikuchiEquivalenceReport compare_region_sets(const RegionSet& kmax_set, const RegionSet& kikuchi_set) {
  KikuchiEquivalenceReport report;
  report.kmax_regions = kmax_set.regions.size();
  report.kikuchi_regions = kikuchi_set.regions.size();

  const auto& a = kmax_set.regions;
  const auto& b = kikuchi_set.regions;
  std::size_t x = 0;
  std::size_t y = 0;
  auto emit = [&](const Region& scope, std::int64_t ca, std::int64_t cb) {
    if (ca == cb) return;
    RegionMismatch m;
    m.scope = scope;
    m.kmax_counting = ca;
    m.kikuchi_counting = cb;
    report.diffs.push_back(std::move(m));
  };
  while (x < a.size() || y < b.size()) {
    if (y == b.size() || (x < a.size() && scope_less(a[x], b[y]))) {
      if (a[x].counting_number == 0) ++report.absent_with_zero;
      emit(a[x], a[x].counting_number, 0);
      ++x;
    } else if (x == a.size() || scope_less(b[y], a[x])) {
      emit(b[y], 0, b[y].counting_number);
      ++y;
    } else {
      emit(a[x], a[x].counting_number, b[y].counting_number);
      ++x;
      ++y;
    }
  }
  return report;
}

KikuchiEquivalenceReport verify_kikuchi_equivalence(const ConflictGraph& g, std::size_t k_max) {
  return compare_region_sets(build_kmax_regions(g, k_max), build_kikuchi_regions(g, k_max));
}

}  // namespace csma
