#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "csma/graph.hpp"

namespace csma {

// Target throughputs violate a feasibility requirement (a region or clique
// sum reaches 1, or the oracle cannot match them). The CLI maps this to exit code 2.
class InfeasibleInput : public std::runtime_error {
 public:
  InfeasibleInput(const std::string& what, std::vector<NodeId> offending = {})
      : std::runtime_error(what), offending_(std::move(offending)) {}
  const std::vector<NodeId>& offending() const { return offending_; }

 private:
  std::vector<NodeId> offending_;
};

// Operation requires a chordal conflict graph.
class NotChordal : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Per-link target throughputs, each strictly inside (0, 1).
class ThroughputVector {
 public:
  ThroughputVector() = default;
  explicit ThroughputVector(std::vector<double> phi);

  std::size_t size() const { return phi_.size(); }
  double operator[](std::size_t i) const { return phi_[i]; }
  std::span<const double> values() const { return phi_; }
  double sum_over(std::span<const NodeId> nodes) const;

 private:
  std::vector<double> phi_;
};

enum class Method { bethe, triangle, kmax, kikuchi, chordal_exact, oracle, regions };

std::string to_string(Method m);

struct BackoffVector {
  std::vector<double> nu;
  Method method = Method::regions;
  std::optional<std::size_t> k_max;
  // Set when every region sum is below one but some maximal clique sum is
  // not, i.e. the targets lie outside the achievable set.
  bool gamma_warning = false;

  std::size_t size() const { return nu.size(); }
  double operator[](std::size_t i) const { return nu[i]; }
};

// Throws InfeasibleInput unless every entry is positive and finite.
void check_rates(std::span<const double> nu);

// Target presets from the evaluation protocol.
ThroughputVector uniform_over_max_clique(const ConflictGraph& g, double load);  // load / omega(G)
ThroughputVector degree_scaled(const ConflictGraph& g, double load);            // load / (1 + d_i)

}  // namespace csma
