#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "csma/graph.hpp"
#include "csma/regions.hpp"

namespace csma {

// Kikuchi region hierarchy generated from
//   R_0 = {R_{f_i}} ∪ {R(K) : K a clique of size k_max, or a maximal clique of size 2..k_max-1}
// by closing under pairwise intersections level by level. Level i+1 holds the
// nonempty intersections of a level-i region with a region of level <= i
// (neither containing the other), keeping only those not contained in another
// level-(i+1) region. Counting numbers: c_R = 1 - sum of c over strict super-regions.
RegionSet build_kikuchi_regions(const ConflictGraph& g, std::size_t k_max);

// Same closure for an arbitrary level-0 clique list (plus the node-factor regions).
RegionSet build_kikuchi_regions_from(const ConflictGraph& g, const std::vector<Clique>& base);

struct RegionMismatch {
  Region scope;  // counting_number unused
  std::int64_t kmax_counting = 0;     // 0 when absent from the size-k_max set
  std::int64_t kikuchi_counting = 0;  // 0 when absent from the Kikuchi set
};

struct KikuchiEquivalenceReport {
  std::size_t kmax_regions = 0;
  std::size_t kikuchi_regions = 0;
  std::size_t absent_with_zero = 0;  // size-k_max regions missing from the Kikuchi set (all c = 0)
  std::vector<RegionMismatch> diffs;
  bool ok() const { return diffs.empty(); }
};

// Compares the size-k_max clique regions with the Kikuchi regions. A region
// missing from either side counts as c = 0; any differing counting number is
// reported.
KikuchiEquivalenceReport verify_kikuchi_equivalence(const ConflictGraph& g, std::size_t k_max);

KikuchiEquivalenceReport compare_region_sets(const RegionSet& kmax_set, const RegionSet& kikuchi_set);

}  // namespace csma
