#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "csma/graph.hpp"
#include "csma/rates.hpp"
#include "csma/throughput.hpp"

namespace csma {

inline constexpr std::size_t kDefaultStateCap = 24;

// The set of independent sets of a graph, each stored as a bitmask over nodes.
struct StateSpace {
  std::size_t n = 0;
  std::vector<std::uint64_t> independent_sets;  // increasing; includes 0 (all idle)

  std::size_t size() const { return independent_sets.size(); }
  static bool active(std::uint64_t state, NodeId i) { return (state >> i) & 1U; }
};

// Thrown when n exceeds the configured state-space cap.
class StateSpaceTooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Backtracking over nodes in index order. The cap may be raised up to 63.
StateSpace enumerate_independent_sets(const ConflictGraph& g, std::size_t cap = kDefaultStateCap);

struct ForwardResult {
  std::vector<double> phi;  // p_i(1)
  double Z = 0.0;
  double log_Z = 0.0;
};

// Marginals of p(x) = prod nu_i^{x_i} / Z over the independent sets.
ForwardResult forward_throughputs(const StateSpace& omega, std::span<const double> nu);
ForwardResult forward_throughputs(const ConflictGraph& g, std::span<const double> nu,
                                  std::size_t cap = kDefaultStateCap);

// Raised when the inverse iteration stops before reaching the tolerance;
// the targets most likely lie outside the achievable region.
class NonConvergence : public InfeasibleInput {
 public:
  NonConvergence(const std::string& what, std::size_t iterations, double residual)
      : InfeasibleInput(what), iterations_(iterations), residual_(residual) {}
  std::size_t iterations() const { return iterations_; }
  double residual() const { return residual_; }

 private:
  std::size_t iterations_;
  double residual_;
};

struct InverseOptions {
  double tol = 1e-10;  // max_i |p_i(1; nu) - phi_i|
  std::size_t max_iter = 100000;
  std::size_t cap = kDefaultStateCap;
};

// Fixed point nu_i <- nu_i phi_i / p_i(1; nu) from nu_i = phi_i / (1 - phi_i).
// A step that increases the residual is halved in log space.
BackoffVector inverse_rates_bruteforce(const ConflictGraph& g, const ThroughputVector& phi,
                                       const InverseOptions& opts = {});

enum class Feasibility { feasible, infeasible, unknown };
std::string to_string(Feasibility f);

struct FeasibilityReport {
  Feasibility verdict = Feasibility::unknown;
  CliqueLoad max_clique;            // largest maximal-clique target sum
  bool clique_bound_ok = false;     // max_clique.sum < 1
  std::optional<std::size_t> iterations;
  std::string detail;
};

// Infeasible if a maximal clique sums to at least one; otherwise, for n within
// the cap, feasible iff the inverse iteration converges; unknown otherwise.
FeasibilityReport feasibility_check(const ConflictGraph& g, const ThroughputVector& phi,
                                    const InverseOptions& opts = {});

}  // namespace csma
