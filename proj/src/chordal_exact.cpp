#include "csma/chordal_exact.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "csma/rates.hpp"

namespace csma {

namespace {

double log_slack(const ThroughputVector& phi, std::span<const NodeId> nodes) {
  return std::log1p(-phi.sum_over(nodes));
}

double set_entropy(const ThroughputVector& phi, std::span<const NodeId> nodes) {
  double h = 0.0;
  double s = 0.0;
  for (NodeId v : nodes) {
    h -= phi[v] * std::log(phi[v]);
    s += phi[v];
  }
  if (s > 0.0) h -= (1.0 - s) * std::log1p(-s);
  return h;
}

// theta(S, x) as described in the header.
double theta(const ThroughputVector& phi, std::span<const NodeId> nodes, std::span<const std::uint8_t> x) {
  std::size_t active = 0;
  NodeId who = 0;
  for (NodeId v : nodes) {
    if (x[v]) {
      ++active;
      who = v;
    }
  }
  if (active == 0) return 1.0 - phi.sum_over(nodes);
  if (active == 1) return phi[who];
  return 0.0;
}

void validate_tree(const CliqueTree& tree, std::size_t n) {
  if (!has_running_intersection(tree, n)) throw NotChordal("not a clique tree with the running intersection property");
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace

ChordalSolution exact_rates_chordal(const ConflictGraph& g, const ThroughputVector& phi,
                                    std::optional<std::uint64_t> tie_break_seed) {
  return exact_rates_chordal(g, phi, clique_tree(g, tie_break_seed));
}

ChordalSolution exact_rates_chordal(const ConflictGraph& g, const ThroughputVector& phi, CliqueTree tree) {
  if (phi.size() != g.size()) throw std::invalid_argument("throughput vector size does not match graph");
  validate_tree(tree, g.size());
  for (const auto& k : tree.cliques) {
    const double s = phi.sum_over(k.members);
    if (!(s < 1.0)) {
      std::ostringstream os;
      os << "target throughputs of maximal clique " << describe(clique_region(k.members)) << " sum to " << s
         << " >= 1";
      throw InfeasibleInput(os.str(), k.members);
    }
  }

  std::vector<double> logs(g.size());
  for (NodeId i = 0; i < g.size(); ++i) logs[i] = std::log(phi[i]);
  double log_z = 0.0;
  for (const auto& k : tree.cliques) {
    const double l = log_slack(phi, k.members);
    log_z -= l;
    for (NodeId v : k.members) logs[v] -= l;
  }
  for (const auto& s : tree.separators) {
    if (s.empty()) continue;
    const double l = log_slack(phi, s);
    log_z += l;
    for (NodeId v : s) logs[v] += l;
  }

  ChordalSolution sol;
  sol.rates.nu.resize(g.size());
  for (NodeId i = 0; i < g.size(); ++i) sol.rates.nu[i] = std::exp(logs[i]);
  sol.rates.method = Method::chordal_exact;
  check_rates(sol.rates.nu);
  sol.log_Z = log_z;
  sol.Z = std::exp(log_z);
  sol.tree = std::move(tree);
  return sol;
}

double stationary_probability_chordal(const CliqueTree& tree, const ThroughputVector& phi,
                                      std::span<const std::uint8_t> x) {
  if (x.size() != phi.size()) throw std::invalid_argument("activity vector size does not match targets");
  double p = 1.0;
  for (const auto& k : tree.cliques) {
    p *= theta(phi, k.members, x);
    if (p == 0.0) return 0.0;
  }
  for (const auto& s : tree.separators) p /= theta(phi, s, x);
  return p;
}

double gibbs_entropy_chordal(const CliqueTree& tree, const ThroughputVector& phi) {
  validate_tree(tree, phi.size());
  double h = 0.0;
  for (const auto& k : tree.cliques) h += set_entropy(phi, k.members);
  for (const auto& s : tree.separators) h -= set_entropy(phi, s);
  return h;
}

RegionSet build_chordal_regions(const ConflictGraph& g, const CliqueTree& tree) {
  validate_tree(tree, g.size());
  RegionSet set;
  set.kind = RegionKind::chordal;
  set.n = g.size();
  std::vector<std::int64_t> node_sum(g.size(), 0);
  auto add = [&](Region r, std::int64_t c) {
    r.counting_number = c;
    for (NodeId v : r.variables) node_sum[v] += c;
    set.regions.push_back(std::move(r));
  };
  for (const auto& k : tree.cliques)
    if (k.size() >= 2) add(clique_region(k.members), 1);
  for (const auto& s : tree.separators)
    if (!s.empty()) add(clique_region(s), -1);
  for (NodeId i = 0; i < g.size(); ++i) {
    Region f = node_factor_region(i);
    f.counting_number = 1;
    set.regions.push_back(std::move(f));
    Region x = variable_region(i);
    x.counting_number = -node_sum[i];
    set.regions.push_back(std::move(x));
  }
  set.canonicalize();
  return set;
}

ChordalKikuchiReport verify_chordal_kikuchi_identity(const ConflictGraph& g, std::optional<ThroughputVector> phi) {
  const CliqueTree tree = clique_tree(g);
  const RegionSet kikuchi = build_kikuchi_regions_from(g, tree.cliques);
  const RegionSet chordal = build_chordal_regions(g, tree);

  ChordalKikuchiReport report;
  std::map<std::vector<NodeId>, std::int64_t> separator_count;
  for (const auto& s : tree.separators)
    if (!s.empty()) ++separator_count[s];
  for (const Region& r : kikuchi.regions) {
    if (r.level == 0) continue;
    const auto it = separator_count.find(r.variables);
    const std::int64_t expected =
        -(it == separator_count.end() ? 0 : it->second) - (r.variables.size() == 1 ? 1 : 0);
    if (r.counting_number != expected) report.identity_violations.push_back({r, expected});
  }
  report.region_diffs = compare_region_sets(chordal, kikuchi).diffs;

  const ThroughputVector targets = phi ? *phi : degree_scaled(g, 0.85);
  const std::vector<std::vector<double>> routes{
      backoff_from_regions(kikuchi, targets).nu,
      backoff_from_regions(chordal, targets).nu,
      kmax_rates_recursive(g, targets, std::max<std::size_t>(g.size(), 1)).nu,
      exact_rates_chordal(g, targets, tree).rates.nu,
  };
  for (std::size_t a = 0; a < routes.size(); ++a)
    for (std::size_t b = a + 1; b < routes.size(); ++b)
      for (std::size_t i = 0; i < g.size(); ++i)
        report.max_rate_rel_diff = std::max(report.max_rate_rel_diff, rel_diff(routes[a][i], routes[b][i]));
  return report;
}

}  // namespace csma
