#include "csma/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "csma/kernels.hpp"

namespace csma {

StateSpace enumerate_independent_sets(const ConflictGraph& g, std::size_t cap) {
  if (cap > 63) throw std::invalid_argument("state-space cap cannot exceed 63 nodes");
  if (g.size() > cap) {
    throw StateSpaceTooLarge("graph has " + std::to_string(g.size()) + " nodes, above the enumeration cap of " +
                             std::to_string(cap));
  }
  const std::size_t n = g.size();
  std::vector<std::uint64_t> nbr(n, 0);
  for (const Edge& e : g.edges()) {
    nbr[e.u] |= std::uint64_t{1} << e.v;
    nbr[e.v] |= std::uint64_t{1} << e.u;
  }

  StateSpace omega;
  omega.n = n;
  // Explicit stack of (next node, current set, nodes blocked by the set).
  struct Frame {
    std::size_t next;
    std::uint64_t set;
    std::uint64_t blocked;
  };
  std::vector<Frame> stack{{0, 0, 0}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    if (f.next == n) {
      omega.independent_sets.push_back(f.set);
      continue;
    }
    const std::uint64_t bit = std::uint64_t{1} << f.next;
    if (!(f.blocked & bit)) stack.push_back({f.next + 1, f.set | bit, f.blocked | nbr[f.next]});
    stack.push_back({f.next + 1, f.set, f.blocked});
  }
  std::sort(omega.independent_sets.begin(), omega.independent_sets.end());
  return omega;
}

ForwardResult forward_throughputs(const StateSpace& omega, std::span<const double> nu) {
  if (nu.size() != omega.n) throw std::invalid_argument("rate vector size does not match state space");
  std::vector<double> log_nu(nu.size());
  for (std::size_t i = 0; i < nu.size(); ++i) {
    if (!(nu[i] > 0.0) || !std::isfinite(nu[i])) throw std::invalid_argument("back-off rates must be positive and finite");
    log_nu[i] = std::log(nu[i]);
  }
  const auto sums = kernels::omp::forward_sums(omega.independent_sets, log_nu);
  ForwardResult r;
  r.phi = sums.marginals;
  r.log_Z = sums.log_z;
  r.Z = std::exp(sums.log_z);
  return r;
}

ForwardResult forward_throughputs(const ConflictGraph& g, std::span<const double> nu, std::size_t cap) {
  return forward_throughputs(enumerate_independent_sets(g, cap), nu);
}

BackoffVector inverse_rates_bruteforce(const ConflictGraph& g, const ThroughputVector& phi,
                                       const InverseOptions& opts) {
  if (phi.size() != g.size()) throw std::invalid_argument("throughput vector size does not match graph");
  const StateSpace omega = enumerate_independent_sets(g, opts.cap);
  const std::size_t n = g.size();

  std::vector<double> log_nu(n);
  std::vector<double> log_phi(n);
  for (std::size_t i = 0; i < n; ++i) {
    log_phi[i] = std::log(phi[i]);
    log_nu[i] = log_phi[i] - std::log1p(-phi[i]);
  }
  auto residual_of = [&](const std::vector<double>& marg) {
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) r = std::max(r, std::abs(marg[i] - phi[i]));
    return r;
  };

  auto sums = kernels::omp::forward_sums(omega.independent_sets, log_nu);
  double residual = residual_of(sums.marginals);
  double step = 1.0;
  std::size_t iter = 0;
  for (; iter < opts.max_iter && residual > opts.tol; ++iter) {
    for (std::size_t i = 0; i < n; ++i) log_nu[i] += step * (log_phi[i] - std::log(sums.marginals[i]));
    for (double l : log_nu) {
      if (!std::isfinite(l) || std::abs(l) > 700.0) {
        std::ostringstream os;
        os << "inverse iteration diverged after " << iter + 1 << " steps; targets are likely outside the achievable region";
        throw NonConvergence(os.str(), iter + 1, residual);
      }
    }
    sums = kernels::omp::forward_sums(omega.independent_sets, log_nu);
    const double next = residual_of(sums.marginals);
    if (next > residual) step = 0.5;
    residual = next;
  }
  if (residual > opts.tol) {
    std::ostringstream os;
    os << "inverse iteration did not reach tolerance " << opts.tol << " within " << opts.max_iter
       << " steps (residual " << residual << "); targets are likely outside the achievable region";
    throw NonConvergence(os.str(), iter, residual);
  }

  BackoffVector out;
  out.nu.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.nu[i] = std::exp(log_nu[i]);
  out.method = Method::oracle;
  check_rates(out.nu);
  return out;
}

std::string to_string(Feasibility f) {
  switch (f) {
    case Feasibility::feasible: return "feasible";
    case Feasibility::infeasible: return "infeasible";
    case Feasibility::unknown: return "unknown";
  }
  return "unknown";
}

FeasibilityReport feasibility_check(const ConflictGraph& g, const ThroughputVector& phi, const InverseOptions& opts) {
  FeasibilityReport rep;
  rep.max_clique = max_clique_load(g, phi);
  rep.clique_bound_ok = rep.max_clique.sum < 1.0;
  if (!rep.clique_bound_ok) {
    rep.verdict = Feasibility::infeasible;
    rep.detail = "maximal clique target sum reaches one";
    return rep;
  }
  if (g.size() > opts.cap) {
    rep.verdict = Feasibility::unknown;
    rep.detail = "above enumeration cap; every maximal clique sum is below one";
    return rep;
  }
  try {
    (void)inverse_rates_bruteforce(g, phi, opts);
    rep.verdict = Feasibility::feasible;
    rep.detail = "inverse iteration converged";
  } catch (const NonConvergence& e) {
    // Non-convergence is evidence, not proof, of infeasibility.
    rep.verdict = Feasibility::unknown;
    rep.iterations = e.iterations();
    rep.detail = e.what();
  }
  return rep;
}

}  // namespace csma
