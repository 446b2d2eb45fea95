#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "kernel_bodies.hpp"

namespace csma::kernels::omp {

namespace {

// Fixed chunking keeps the reduction order independent of the thread count.
constexpr std::size_t kMinChunk = 1024;
constexpr std::size_t kMaxChunks = 256;

std::size_t chunk_size(std::size_t total) {
  return std::max(kMinChunk, (total + kMaxChunks - 1) / kMaxChunks);
}

}  // namespace

std::vector<Clique> enumerate_cliques(const ConflictGraph& g, std::size_t k_max) {
  const auto n = static_cast<std::ptrdiff_t>(g.size());
  std::vector<std::vector<Clique>> rooted(g.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t v = 0; v < n; ++v) {
    detail::cliques_rooted_at(g, static_cast<NodeId>(v), k_max, rooted[static_cast<std::size_t>(v)]);
  }
  std::size_t total = 0;
  for (const auto& r : rooted) total += r.size();
  std::vector<Clique> out;
  out.reserve(total);
  for (auto& r : rooted) std::move(r.begin(), r.end(), std::back_inserter(out));
  std::sort(out.begin(), out.end());
  return out;
}

LevelTable kmax_log_rates(const ConflictGraph& g, std::span<const double> phi, std::size_t k_max) {
  const std::size_t n = g.size();
  std::vector<detail::NodeLevels> per_node(n);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    per_node[static_cast<std::size_t>(i)] = detail::kmax_node_levels(g, phi, static_cast<NodeId>(i), k_max);
  }

  LevelTable table;
  table.nodes = n;
  table.levels = 1;
  for (const auto& nl : per_node) {
    if (nl.infeasible && !table.infeasible_clique) table.infeasible_clique = nl.infeasible;
    table.levels = std::max(table.levels, nl.top);
  }
  table.data.resize(n * table.levels);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    const auto u = static_cast<std::size_t>(i);
    detail::store_levels(per_node[u], phi[u], table.levels, table.data.data() + u * table.levels);
  }
  return table;
}

std::vector<double> region_log_rates(const RegionIncidence& inc, std::span<const double> phi) {
  std::vector<double> out(inc.by_node.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(out.size()); ++i) {
    out[static_cast<std::size_t>(i)] = detail::region_node_log_rate(inc, phi, static_cast<NodeId>(i));
  }
  return out;
}

ForwardSums forward_sums(std::span<const std::uint64_t> states, std::span<const double> log_nu) {
  const std::size_t total = states.size();
  const std::size_t width = chunk_size(total);
  const std::size_t chunks = (total + width - 1) / width;
  const std::size_t n = log_nu.size();

  std::vector<double> chunk_max(chunks, -std::numeric_limits<double>::infinity());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(chunks); ++c) {
    const std::size_t b = static_cast<std::size_t>(c) * width;
    chunk_max[static_cast<std::size_t>(c)] =
        detail::chunk_max_log_weight(states.subspan(b, std::min(width, total - b)), log_nu);
  }
  const double shift =
      chunks == 0 ? 0.0 : *std::max_element(chunk_max.begin(), chunk_max.end());

  std::vector<double> chunk_z(chunks, 0.0);
  std::vector<double> chunk_marg(chunks * n, 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(chunks); ++c) {
    const auto u = static_cast<std::size_t>(c);
    const std::size_t b = u * width;
    detail::accumulate_chunk(states.subspan(b, std::min(width, total - b)), log_nu, shift, chunk_z[u],
                             std::span<double>(chunk_marg).subspan(u * n, n));
  }

  ForwardSums out;
  out.marginals.assign(n, 0.0);
  double z = 0.0;
  for (std::size_t c = 0; c < chunks; ++c) {
    z += chunk_z[c];
    for (std::size_t i = 0; i < n; ++i) out.marginals[i] += chunk_marg[c * n + i];
  }
  for (double& m : out.marginals) m /= z;
  out.log_z = shift + std::log(z);
  return out;
}

}  // namespace csma::kernels::omp
