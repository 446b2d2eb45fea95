#pragma once

// Per-item kernel bodies shared by kernels_serial.cpp and kernels_omp.cpp.

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "clique_walk.hpp"
#include "csma/kernels.hpp"

namespace csma::kernels::detail {

// {root} and every clique of size <= k_max whose smallest member is root.
inline void cliques_rooted_at(const ConflictGraph& g, NodeId root, std::size_t k_max,
                              std::vector<Clique>& out) {
  if (k_max == 0) return;
  std::vector<NodeId> members{root};
  out.emplace_back(members);
  const std::vector<NodeId> candidates = csma::detail::upper_neighbors(g, root);
  auto visit = [&](std::span<const NodeId> m, NodeId, std::size_t) {
    Clique c;
    c.members.assign(m.begin(), m.end());
    std::sort(c.members.begin(), c.members.end());
    out.push_back(std::move(c));
  };
  csma::detail::walk_extensions(g, members, candidates, k_max, 0, visit);
}

struct NodeLevels {
  // increments[k] is ln nu^{(k)} - ln nu^{(k-1)}, k >= 2; entries 0 and 1 unused.
  std::vector<double> increments;
  std::size_t top = 1;  // largest clique size reached through this node
  std::optional<std::vector<NodeId>> infeasible;
};

// Recursive size-k clique rates for one node. Every clique K' containing i
// with |K'| = k contributes prod_{i in K subset of K'} (1 - sum_K phi)^{(-1)^{k-|K|+1}}
// to the step from level k-1 to level k. The subsets of K' containing i are
// indexed by bitmasks over the members added after i; the walk appends one
// member at a time, so only the half of the table containing the new member
// has to be filled in at each step.
inline NodeLevels kmax_node_levels(const ConflictGraph& g, std::span<const double> phi, NodeId i,
                                   std::size_t k_max) {
  NodeLevels out;
  out.increments.assign(std::max<std::size_t>(k_max, 1) + 1, 0.0);
  if (k_max < 2) return out;

  std::vector<double> sums{phi[i]};
  std::vector<double> logs{std::log1p(-phi[i])};
  // alternating[d] = sum over masks < 2^d of (-1)^popcount(mask) * logs[mask]
  std::vector<double> alternating{logs[0]};

  std::vector<NodeId> members{i};
  const auto nbrs = g.neighbors(i);
  const std::vector<NodeId> candidates(nbrs.begin(), nbrs.end());

  auto visit = [&](std::span<const NodeId> m, NodeId added, std::size_t depth) {
    if (out.infeasible) return;
    const std::size_t half = std::size_t{1} << (depth - 1);
    if (sums.size() < 2 * half) {
      sums.resize(2 * half);
      logs.resize(2 * half);
    }
    if (alternating.size() < depth + 1) alternating.resize(depth + 1);

    double acc = alternating[depth - 1];
    const double p = phi[added];
    for (std::size_t mask = 0; mask < half; ++mask) {
      const double s = sums[mask] + p;
      sums[half + mask] = s;
      const double l = std::log1p(-s);
      logs[half + mask] = l;
      // popcount(half + mask) = popcount(mask) + 1
      acc += (std::popcount(mask) % 2 == 0) ? -l : l;
    }
    alternating[depth] = acc;

    if (!(sums[2 * half - 1] < 1.0)) {
      std::vector<NodeId> bad(m.begin(), m.end());
      std::sort(bad.begin(), bad.end());
      out.infeasible = std::move(bad);
      return;
    }
    const std::size_t k = depth + 1;
    out.increments[k] += (k % 2 == 0) ? acc : -acc;
    out.top = std::max(out.top, k);
  };
  csma::detail::walk_extensions(g, members, candidates, k_max, 0, visit);
  return out;
}

inline void store_levels(const NodeLevels& nl, double phi_i, std::size_t levels, double* row) {
  double acc = std::log(phi_i) - std::log1p(-phi_i);
  row[0] = acc;
  for (std::size_t k = 2; k <= levels; ++k) {
    if (k < nl.increments.size()) acc += nl.increments[k];
    row[k - 1] = acc;
  }
}

inline double region_node_log_rate(const RegionIncidence& inc, std::span<const double> phi, NodeId i) {
  double acc = std::log(phi[i]);
  for (std::uint32_t r : inc.by_node[i]) {
    const std::int64_t c = inc.counting[r];
    if (c != 0) acc -= static_cast<double>(c) * inc.log_slack[r];
  }
  return acc;
}

inline double state_log_weight(std::uint64_t state, std::span<const double> log_nu) {
  double w = 0.0;
  while (state != 0) {
    const int bit = std::countr_zero(state);
    w += log_nu[static_cast<std::size_t>(bit)];
    state &= state - 1;
  }
  return w;
}

inline double chunk_max_log_weight(std::span<const std::uint64_t> states, std::span<const double> log_nu) {
  double m = -std::numeric_limits<double>::infinity();
  for (std::uint64_t s : states) m = std::max(m, state_log_weight(s, log_nu));
  return m;
}

// Adds exp(log w(x) - shift) into z and, per active link, into marginals.
inline void accumulate_chunk(std::span<const std::uint64_t> states, std::span<const double> log_nu,
                             double shift, double& z, std::span<double> marginals) {
  for (std::uint64_t s : states) {
    const double w = std::exp(state_log_weight(s, log_nu) - shift);
    z += w;
    std::uint64_t bits = s;
    while (bits != 0) {
      marginals[static_cast<std::size_t>(std::countr_zero(bits))] += w;
      bits &= bits - 1;
    }
  }
}

}  // namespace csma::kernels::detail
