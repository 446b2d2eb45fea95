#pragma once

// Data-parallel kernels behind the public API. Each kernel has a serial
// reference driver and an OpenMP driver that run the same per-item body;
// the OpenMP drivers produce results that do not depend on the thread count.
// The public entry points (enumerate_cliques, kmax_rates_recursive,
// backoff_from_regions, forward_throughputs) use the OpenMP drivers.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "csma/cliques.hpp"
#include "csma/graph.hpp"

namespace csma::kernels {

// Cumulative log back-off rates of the size-k clique approximations,
// ln nu_i^{(k)} for k = 1..levels, stored row-major per node.
struct LevelTable {
  std::size_t nodes = 0;
  std::size_t levels = 0;
  std::vector<double> data;
  // First clique (per node order) whose target sum reaches one, if any.
  std::optional<std::vector<NodeId>> infeasible_clique;

  double at(std::size_t node, std::size_t level) const { return data[node * levels + (level - 1)]; }
};

// Regions flattened for rate evaluation: for every node the indices of the
// regions containing it, and per region ln(1 - sum of targets) and c_R.
struct RegionIncidence {
  std::vector<std::vector<std::uint32_t>> by_node;
  std::vector<double> log_slack;
  std::vector<std::int64_t> counting;
};

// Unnormalized product-form sums over a list of independent sets (bitmasks).
struct ForwardSums {
  double log_z = 0.0;
  std::vector<double> marginals;  // p_i(1)
};

namespace serial {
std::vector<Clique> enumerate_cliques(const ConflictGraph& g, std::size_t k_max);
LevelTable kmax_log_rates(const ConflictGraph& g, std::span<const double> phi, std::size_t k_max);
std::vector<double> region_log_rates(const RegionIncidence& inc, std::span<const double> phi);
ForwardSums forward_sums(std::span<const std::uint64_t> states, std::span<const double> log_nu);
}  // namespace serial

namespace omp {
std::vector<Clique> enumerate_cliques(const ConflictGraph& g, std::size_t k_max);
LevelTable kmax_log_rates(const ConflictGraph& g, std::span<const double> phi, std::size_t k_max);
std::vector<double> region_log_rates(const RegionIncidence& inc, std::span<const double> phi);
ForwardSums forward_sums(std::span<const std::uint64_t> states, std::span<const double> log_nu);
}  // namespace omp

}  // namespace csma::kernels
