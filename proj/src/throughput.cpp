#include "csma/throughput.hpp"

#include <cmath>

#include "csma/cliques.hpp"

namespace csma {

ThroughputVector::ThroughputVector(std::vector<double> phi) : phi_(std::move(phi)) {
  for (std::size_t i = 0; i < phi_.size(); ++i) {
    const double p = phi_[i];
    if (!(p > 0.0 && p < 1.0)) {
      throw InfeasibleInput("throughput of link " + std::to_string(i) + " must lie in (0,1), got " +
                                std::to_string(p),
                            {static_cast<NodeId>(i)});
    }
  }
}

double ThroughputVector::sum_over(std::span<const NodeId> nodes) const {
  double s = 0.0;
  for (NodeId v : nodes) s += phi_[v];
  return s;
}

std::string to_string(Method m) {
  switch (m) {
    case Method::bethe: return "bethe";
    case Method::triangle: return "triangle";
    case Method::kmax: return "kmax";
    case Method::kikuchi: return "kikuchi";
    case Method::chordal_exact: return "chordal-exact";
    case Method::oracle: return "oracle";
    case Method::regions: return "regions";
  }
  return "unknown";
}

void check_rates(std::span<const double> nu) {
  for (std::size_t i = 0; i < nu.size(); ++i) {
    if (!(nu[i] > 0.0) || !std::isfinite(nu[i])) {
      throw InfeasibleInput("back-off rate of link " + std::to_string(i) + " is not positive and finite",
                            {static_cast<NodeId>(i)});
    }
  }
}

ThroughputVector uniform_over_max_clique(const ConflictGraph& g, double load) {
  const double omega = static_cast<double>(clique_number(g));
  return ThroughputVector(std::vector<double>(g.size(), load / omega));
}

ThroughputVector degree_scaled(const ConflictGraph& g, double load) {
  std::vector<double> phi(g.size());
  for (NodeId i = 0; i < g.size(); ++i) phi[i] = load / (1.0 + static_cast<double>(g.degree(i)));
  return ThroughputVector(std::move(phi));
}

}  // namespace csma
