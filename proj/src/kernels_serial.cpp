#include <algorithm>
#include <cmath>

#include "kernel_bodies.hpp"

namespace csma::kernels::serial {

std::vector<Clique> enumerate_cliques(const ConflictGraph& g, std::size_t k_max) {
  std::vector<Clique> out;
  for (NodeId v = 0; v < g.size(); ++v) detail::cliques_rooted_at(g, v, k_max, out);
  std::sort(out.begin(), out.end());
  return out;
}

LevelTable kmax_log_rates(const ConflictGraph& g, std::span<const double> phi, std::size_t k_max) {
  const std::size_t n = g.size();
  std::vector<detail::NodeLevels> per_node(n);
  for (NodeId i = 0; i < n; ++i) per_node[i] = detail::kmax_node_levels(g, phi, i, k_max);

  LevelTable table;
  table.nodes = n;
  table.levels = 1;
  for (const auto& nl : per_node) {
    if (nl.infeasible && !table.infeasible_clique) table.infeasible_clique = nl.infeasible;
    table.levels = std::max(table.levels, nl.top);
  }
  table.data.resize(n * table.levels);
  for (NodeId i = 0; i < n; ++i) {
    detail::store_levels(per_node[i], phi[i], table.levels, table.data.data() + i * table.levels);
  }
  return table;
}

std::vector<double> region_log_rates(const RegionIncidence& inc, std::span<const double> phi) {
  std::vector<double> out(inc.by_node.size());
  for (NodeId i = 0; i < out.size(); ++i) out[i] = detail::region_node_log_rate(inc, phi, i);
  return out;
}

ForwardSums forward_sums(std::span<const std::uint64_t> states, std::span<const double> log_nu) {
  ForwardSums out;
  out.marginals.assign(log_nu.size(), 0.0);
  const double shift = detail::chunk_max_log_weight(states, log_nu);
  double z = 0.0;
  detail::accumulate_chunk(states, log_nu, shift, z, out.marginals);
  for (double& m : out.marginals) m /= z;
  out.log_z = shift + std::log(z);
  return out;
}

}  // namespace csma::kernels::serial
