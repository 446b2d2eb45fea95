#include "csma/rates.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace csma {

namespace {

void require_size(const ConflictGraph& g, const ThroughputVector& phi) {
  if (phi.size() != g.size()) {
    throw std::invalid_argument("throughput vector has " + std::to_string(phi.size()) +
                                " entries for a graph with " + std::to_string(g.size()) + " nodes");
  }
}

std::string list_nodes(std::span<const NodeId> nodes) {
  std::ostringstream os;
  os << "{";
  for (std::size_t k = 0; k < nodes.size(); ++k) os << (k ? "," : "") << nodes[k];
  os << "}";
  return os.str();
}

[[noreturn]] void throw_infeasible(std::span<const NodeId> nodes, double sum) {
  std::ostringstream os;
  os << "target throughputs of " << list_nodes(nodes) << " sum to " << sum << " >= 1";
  throw InfeasibleInput(os.str(), std::vector<NodeId>(nodes.begin(), nodes.end()));
}

std::vector<double> exp_all(const std::vector<double>& logs) {
  std::vector<double> out(logs.size());
  for (std::size_t i = 0; i < logs.size(); ++i) out[i] = std::exp(logs[i]);
  return out;
}

bool exceeds_clique_bound(const ConflictGraph& g, const ThroughputVector& phi) {
  return !(max_clique_load(g, phi).sum < 1.0);
}

}  // namespace

CliqueLoad max_clique_load(const ConflictGraph& g, const ThroughputVector& phi) {
  require_size(g, phi);
  CliqueLoad best;
  for (auto& k : maximal_cliques(g)) {
    const double s = phi.sum_over(k.members);
    if (best.clique.size() == 0 || s > best.sum) {
      best.sum = s;
      best.clique = std::move(k);
    }
  }
  return best;
}

kernels::RegionIncidence region_incidence(const RegionSet& regions, const ThroughputVector& phi) {
  if (phi.size() != regions.n) throw std::invalid_argument("throughput vector size does not match region set");
  kernels::RegionIncidence inc;
  inc.by_node.resize(regions.n);
  inc.log_slack.resize(regions.regions.size());
  inc.counting.resize(regions.regions.size());
  std::vector<std::int64_t> coverage(regions.n, 0);
  for (std::size_t r = 0; r < regions.regions.size(); ++r) {
    const Region& reg = regions.regions[r];
    const double sum = phi.sum_over(reg.variables);
    if (!(sum < 1.0)) throw_infeasible(reg.variables, sum);
    inc.log_slack[r] = std::log1p(-sum);
    inc.counting[r] = reg.counting_number;
    for (NodeId v : reg.variables) {
      inc.by_node[v].push_back(static_cast<std::uint32_t>(r));
      coverage[v] += reg.counting_number;
    }
  }
  for (NodeId i = 0; i < regions.n; ++i) {
    if (coverage[i] != 1) {
      throw std::invalid_argument("region set is not valid: counting numbers around link " + std::to_string(i) +
                                  " sum to " + std::to_string(coverage[i]));
    }
  }
  return inc;
}

BackoffVector backoff_from_regions(const RegionSet& regions, const ThroughputVector& phi) {
  const auto inc = region_incidence(regions, phi);
  BackoffVector out;
  out.nu = exp_all(kernels::omp::region_log_rates(inc, phi.values()));
  out.method = Method::regions;
  if (regions.k_max > 0) out.k_max = regions.k_max;
  check_rates(out.nu);
  return out;
}

BackoffVector bethe_rates(const ConflictGraph& g, const ThroughputVector& phi) {
  require_size(g, phi);
  for (const Edge& e : g.edges()) {
    const double s = phi[e.u] + phi[e.v];
    if (!(s < 1.0)) throw_infeasible(std::vector<NodeId>{e.u, e.v}, s);
  }
  std::vector<double> logs(g.size());
  for (NodeId i = 0; i < g.size(); ++i) {
    const double d = static_cast<double>(g.degree(i));
    double acc = std::log(phi[i]) + (d - 1.0) * std::log1p(-phi[i]);
    for (NodeId j : g.neighbors(i)) acc -= std::log1p(-(phi[i] + phi[j]));
    logs[i] = acc;
  }
  BackoffVector out;
  out.nu = exp_all(logs);
  out.method = Method::bethe;
  out.k_max = 2;
  out.gamma_warning = exceeds_clique_bound(g, phi);
  check_rates(out.nu);
  return out;
}

BackoffVector triangle_rates(const ConflictGraph& g, const ThroughputVector& phi) {
  require_size(g, phi);
  std::vector<double> logs(g.size());
  for (NodeId i = 0; i < g.size(); ++i) {
    const auto nbrs = g.neighbors(i);
    const double d = static_cast<double>(nbrs.size());
    const double slack_i = std::log1p(-phi[i]);
    double acc = std::log(phi[i]) + (d - 1.0) * slack_i;
    std::size_t twice_t_i = 0;
    for (NodeId j : nbrs) {
      const double pair = phi[i] + phi[j];
      if (!(pair < 1.0)) throw_infeasible(std::vector<NodeId>{std::min(i, j), std::max(i, j)}, pair);
      const auto common = sorted_intersection(nbrs, g.neighbors(j));
      const double t_ij = static_cast<double>(common.size());
      twice_t_i += common.size();
      acc += (t_ij - 1.0) * std::log1p(-pair);
      for (NodeId k : common) {
        if (k <= j) continue;  // each triangle {i,j,k} once
        const double tri = pair + phi[k];
        if (!(tri < 1.0)) {
          std::vector<NodeId> nodes{i, j, k};
          std::sort(nodes.begin(), nodes.end());
          throw_infeasible(nodes, tri);
        }
        acc -= std::log1p(-tri);
      }
    }
    acc -= static_cast<double>(twice_t_i / 2) * slack_i;
    logs[i] = acc;
  }
  BackoffVector out;
  out.nu = exp_all(logs);
  out.method = Method::triangle;
  out.k_max = 3;
  out.gamma_warning = exceeds_clique_bound(g, phi);
  check_rates(out.nu);
  return out;
}

std::vector<BackoffVector> kmax_rates_levels(const ConflictGraph& g, const ThroughputVector& phi,
                                             std::size_t k_max) {
  require_size(g, phi);
  if (k_max < 1) throw std::invalid_argument("k_max must be at least 1");
  const auto table = kernels::omp::kmax_log_rates(g, phi.values(), k_max);
  if (table.infeasible_clique) {
    throw_infeasible(*table.infeasible_clique, phi.sum_over(*table.infeasible_clique));
  }
  // Every clique is a region once the recursion stopped below k_max.
  const bool all_cliques_covered = table.levels < k_max;
  const bool warning = !all_cliques_covered && g.size() > 0 && exceeds_clique_bound(g, phi);

  std::vector<BackoffVector> out(table.levels);
  for (std::size_t k = 1; k <= table.levels; ++k) {
    auto& b = out[k - 1];
    b.nu.resize(g.size());
    for (NodeId i = 0; i < g.size(); ++i) b.nu[i] = std::exp(table.at(i, k));
    b.method = Method::kmax;
    b.k_max = k;
    b.gamma_warning = warning;
    check_rates(b.nu);
  }
  return out;
}

BackoffVector kmax_rates_recursive(const ConflictGraph& g, const ThroughputVector& phi, std::size_t k_max) {
  auto levels = kmax_rates_levels(g, phi, k_max);
  BackoffVector out = std::move(levels.back());
  out.k_max = k_max;
  return out;
}

}  // namespace csma
