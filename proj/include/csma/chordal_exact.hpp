#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "csma/chordality.hpp"
#include "csma/graph.hpp"
#include "csma/kikuchi.hpp"
#include "csma/regions.hpp"
#include "csma/throughput.hpp"

namespace csma {

struct ChordalSolution {
  BackoffVector rates;
  double Z = 0.0;
  double log_Z = 0.0;
  CliqueTree tree;
};

// nu_i = phi_i * prod_{separators S containing i} (1 - sum_S phi)
//              / prod_{maximal cliques K containing i} (1 - sum_K phi),
// Z = prod_S (1 - sum_S phi) / prod_K (1 - sum_K phi).
// Throws NotChordal, or InfeasibleInput naming a maximal clique whose sum reaches one.
ChordalSolution exact_rates_chordal(const ConflictGraph& g, const ThroughputVector& phi,
                                    std::optional<std::uint64_t> tie_break_seed = std::nullopt);
ChordalSolution exact_rates_chordal(const ConflictGraph& g, const ThroughputVector& phi, CliqueTree tree);

// p(x) = prod_K theta(K, x) / prod_S theta(S, x) where theta(S, x) is
// 1 - sum_S phi when no node of S is active, phi_i when only i is, 0 otherwise.
// Returns 0 for activity vectors that are not independent sets.
double stationary_probability_chordal(const CliqueTree& tree, const ThroughputVector& phi,
                                      std::span<const std::uint8_t> x);

// sum_K H(K) - sum_S H(S) with H(S) = -sum_{i in S} phi_i ln phi_i - (1 - sum_S phi) ln(1 - sum_S phi).
// Throws NotChordal if `tree` is not a clique tree with the running intersection property.
double gibbs_entropy_chordal(const CliqueTree& tree, const ThroughputVector& phi);

// R_{f_i} and the clique regions of size >= 2 with c = 1, one region per
// nonempty separator with c = -(number of tree edges carrying it), and
// R_{x_i} completing the node counts. A separator {i} shares its scope with R_{x_i}.
RegionSet build_chordal_regions(const ConflictGraph& g, const CliqueTree& tree);

struct ChordalIdentityViolation {
  Region region;            // Kikuchi region outside the level-0 set
  std::int64_t expected = 0;  // -(edges with this separator) - 1{single variable}
};

struct ChordalKikuchiReport {
  std::vector<ChordalIdentityViolation> identity_violations;
  std::vector<RegionMismatch> region_diffs;  // chordal set vs Kikuchi set
  double max_rate_rel_diff = 0.0;            // Kikuchi, chordal set, kmax(n), exact
  double rate_tolerance = 1e-12;

  bool ok() const {
    return identity_violations.empty() && region_diffs.empty() && max_rate_rel_diff <= rate_tolerance;
  }
};

// Builds the Kikuchi closure of the maximal cliques and a clique tree, checks
// the separator identity for every intersection region, and compares the
// back-off rates of the four routes at `phi` (default 0.85/(1+d_i)).
ChordalKikuchiReport verify_chordal_kikuchi_identity(const ConflictGraph& g,
                                                     std::optional<ThroughputVector> phi = std::nullopt);

}  // namespace csma
