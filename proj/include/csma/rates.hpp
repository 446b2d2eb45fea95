#pragma once

#include <cstddef>
#include <vector>

#include "csma/graph.hpp"
#include "csma/kernels.hpp"
#include "csma/regions.hpp"
#include "csma/throughput.hpp"

namespace csma {

// Zero-gradient back-off rates of a region-based free energy under clique
// belief, for any valid region set:
//   nu_i = phi_i * prod_{R : i in V_R} (1 - sum_{j in V_R} phi_j)^{-c_R}.
// With the 2n node regions written out this is
//   phi_i / (1-phi_i)^{1 + c_{R_{x_i}}} * prod_{R in R'} (1 - sum phi)^{-c_R}.
// Evaluated in log space. Throws InfeasibleInput naming the first region whose
// target sum reaches one, std::invalid_argument when the set is not valid.
BackoffVector backoff_from_regions(const RegionSet& regions, const ThroughputVector& phi);

kernels::RegionIncidence region_incidence(const RegionSet& regions, const ThroughputVector& phi);

// nu_i = phi_i (1-phi_i)^{d_i-1} / prod_{j ~ i} (1 - phi_i - phi_j)
BackoffVector bethe_rates(const ConflictGraph& g, const ThroughputVector& phi);

// Bethe regions extended with one region per triangle; uses the per-node and
// per-edge triangle counts t_i and t_{i,j}.
BackoffVector triangle_rates(const ConflictGraph& g, const ThroughputVector& phi);

// Size-k_max clique approximation computed node by node from the cliques in
// its neighborhood, going from nu^{(1)} = phi/(1-phi) up one clique size at
// a time. k_max larger than the clique number changes nothing.
BackoffVector kmax_rates_recursive(const ConflictGraph& g, const ThroughputVector& phi, std::size_t k_max);

// nu^{(1)}, ..., nu^{(k)} with k = min(k_max, clique number); by-product of the recursion.
std::vector<BackoffVector> kmax_rates_levels(const ConflictGraph& g, const ThroughputVector& phi,
                                             std::size_t k_max);

// Largest sum of targets over a maximal clique, with the clique.
struct CliqueLoad {
  double sum = 0.0;
  Clique clique;
};
CliqueLoad max_clique_load(const ConflictGraph& g, const ThroughputVector& phi);

}  // namespace csma
