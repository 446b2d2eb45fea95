#pragma once

#include <span>
#include <vector>

#include "csma/graph.hpp"
#include "csma/regions.hpp"
#include "csma/throughput.hpp"

namespace csma {

struct FreeEnergy {
  double energy = 0.0;   // U = -sum_i phi_i ln nu_i
  double entropy = 0.0;  // region-based entropy under clique belief
  double free_energy = 0.0;  // U - H
};

// Region-based free energy evaluated at the clique belief with marginals phi:
// each region puts mass phi_i on "only i active" and 1 - sum phi on "all idle".
//   H = -sum_R c_R [ sum_{i in V_R} phi_i ln phi_i + (1 - s_R) ln(1 - s_R) ],  s_R = sum_{i in V_R} phi_i
// Throws InfeasibleInput if some region sum reaches one.
FreeEnergy clique_belief_free_energy(const RegionSet& regions, std::span<const double> phi,
                                     std::span<const double> nu);

// Message ratios m_{ij}(0)/m_{ij}(1) on directed edge i -> j.
struct DirectedMessage {
  NodeId from = 0;
  NodeId to = 0;
  double ratio = 0.0;
};

// The ratios (1 - phi_j) / (1 - phi_i - phi_j) for every directed edge i -> j,
// ordered by (from, to).
std::vector<DirectedMessage> bethe_ibp_messages(const ConflictGraph& g, const ThroughputVector& phi);

// True iff m_{ji}(0)/m_{ji}(1) = 1 + m_{ij}(0)/m_{ij}(1) * phi_j/(1-phi_j)
// holds on every directed edge to relative tolerance `tol`.
bool ibp_fixed_point_check(const ConflictGraph& g, const ThroughputVector& phi,
                           std::span<const DirectedMessage> messages, double tol = 1e-12);
bool ibp_fixed_point_check(const ConflictGraph& g, const ThroughputVector& phi, double tol = 1e-12);

}  // namespace csma
