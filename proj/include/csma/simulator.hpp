#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "csma/graph.hpp"
#include "csma/throughput.hpp"

namespace csma {

struct SimConfig {
  double horizon = 1e6;          // simulated time per replication, in mean transmission times
  double warmup_fraction = 0.1;  // leading share of the horizon left out of the averages
  std::uint64_t seed = 1;
  std::size_t replications = 1;
  std::size_t batches = 20;      // batch means for the standard error of a single replication
};

struct SimResult {
  std::vector<double> achieved;                     // mean over replications, per link
  std::vector<double> standard_error;               // per link
  std::vector<std::vector<double>> per_replication;  // [replication][link]
  std::optional<double> mean_relative_error;        // against the target, when given
  std::uint64_t events = 0;                         // processed events, all replications
  double wall_seconds = 0.0;
};

// Seed of replication r: splitmix64 applied to seed + (r + 1) * 0x9e3779b97f4a7c15.
std::uint64_t replication_seed(std::uint64_t seed, std::size_t replication);

// Ideal CSMA: an idle link whose neighbors are all idle activates after an
// exponential back-off with rate nu_i, then transmits for an exponential
// time of mean one. A back-off ending while a neighbor transmits is redrawn;
// since back-offs are memoryless the timer is simply suspended while the link
// is blocked and restarted when it clears, which has the same law.
// Replications run in parallel; results depend only on (g, nu, cfg).
// Throws std::logic_error if two neighbors are ever active together.
SimResult simulate(const ConflictGraph& g, std::span<const double> nu, const SimConfig& cfg,
                   const ThroughputVector* target = nullptr);

// (1/n) sum_i |achieved_i - phi_i| / phi_i
double mean_relative_error(std::span<const double> target, std::span<const double> achieved);
double mean_relative_error(const ThroughputVector& target, std::span<const double> achieved);

}  // namespace csma
