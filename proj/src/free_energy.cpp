#include "csma/free_energy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

namespace csma {

namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

FreeEnergy clique_belief_free_energy(const RegionSet& regions, std::span<const double> phi,
                                     std::span<const double> nu) {
  if (phi.size() != regions.n || nu.size() != regions.n) {
    throw std::invalid_argument("clique_belief_free_energy: size mismatch");
  }
  FreeEnergy f;
  for (std::size_t i = 0; i < phi.size(); ++i) f.energy -= phi[i] * std::log(nu[i]);

  double h = 0.0;
  for (const Region& r : regions.regions) {
    if (r.counting_number == 0) continue;
    double s = 0.0;
    double active = 0.0;
    for (NodeId v : r.variables) {
      s += phi[v];
      active += xlogx(phi[v]);
    }
    if (!(s < 1.0)) throw InfeasibleInput("region " + describe(r) + " has target sum >= 1", r.variables);
    h -= static_cast<double>(r.counting_number) * (active + xlogx(1.0 - s));
  }
  f.entropy = h;
  f.free_energy = f.energy - f.entropy;
  return f;
}

std::vector<DirectedMessage> bethe_ibp_messages(const ConflictGraph& g, const ThroughputVector& phi) {
  std::vector<DirectedMessage> out;
  out.reserve(2 * g.num_edges());
  for (NodeId i = 0; i < g.size(); ++i) {
    for (NodeId j : g.neighbors(i)) {
      const double slack = 1.0 - phi[i] - phi[j];
      if (!(slack > 0.0)) throw InfeasibleInput("edge target sum reaches one", {std::min(i, j), std::max(i, j)});
      out.push_back({i, j, (1.0 - phi[j]) / slack});
    }
  }
  return out;
}

bool ibp_fixed_point_check(const ConflictGraph& g, const ThroughputVector& phi,
                           std::span<const DirectedMessage> messages, double tol) {
  std::map<std::pair<NodeId, NodeId>, double> ratio;
  for (const auto& m : messages) ratio[{m.from, m.to}] = m.ratio;
  for (NodeId i = 0; i < g.size(); ++i) {
    for (NodeId j : g.neighbors(i)) {
      const auto fwd = ratio.find({i, j});
      const auto back = ratio.find({j, i});
      if (fwd == ratio.end() || back == ratio.end()) return false;
      const double expected = 1.0 + fwd->second * phi[j] / (1.0 - phi[j]);
      if (std::abs(back->second - expected) > tol * std::abs(expected)) return false;
    }
  }
  return true;
}

bool ibp_fixed_point_check(const ConflictGraph& g, const ThroughputVector& phi, double tol) {
  const auto messages = bethe_ibp_messages(g, phi);
  return ibp_fixed_point_check(g, phi, messages, tol);
}

}  // namespace csma
