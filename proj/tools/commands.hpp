#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "csma/graph.hpp"
#include "csma/oracle.hpp"
#include "csma/simulator.hpp"
#include "csma/throughput.hpp"

namespace csma::cli {

// bethe | triangle | kmax:<k> | kmax:n | kikuchi:<k> | kikuchi:n | chordal-exact | oracle
struct MethodSpec {
  Method kind = Method::kmax;
  std::optional<std::size_t> k_max;  // unset with k_is_n
  bool k_is_n = false;

  std::string label() const;
  std::size_t resolved_k(const ConflictGraph& g) const;
};

MethodSpec parse_method(const std::string& text);

struct RatesOutcome {
  BackoffVector rates;
  double total_seconds = 0.0;
  double per_node_seconds = 0.0;
};

// Runs one method and times it (best of `repeat` runs).
RatesOutcome compute_rates(const ConflictGraph& g, const ThroughputVector& phi, const MethodSpec& method,
                           std::size_t repeat = 1);

// uniform:<load> (load / max clique size), degree:<load> (load / (1 + d_i)) or a file path.
ThroughputVector resolve_targets(const ConflictGraph& g, const std::string& spec);

struct GenerateArgs {
  std::size_t n = 100;
  double radius = 0.15;
  std::uint64_t seed = 1;
  std::filesystem::path out;
};
int cmd_generate(const GenerateArgs& a, std::ostream& log);

struct RatesArgs {
  std::filesystem::path graph;
  std::string targets;
  std::string method = "kmax:n";
  std::optional<std::filesystem::path> out;       // CSV; stdout when unset
  std::optional<std::filesystem::path> json_out;  // rates with timing
  std::optional<std::filesystem::path> regions_out;
  std::size_t repeat = 1;
};
int cmd_rates(const RatesArgs& a, std::ostream& out, std::ostream& log);

struct SimulateArgs {
  std::filesystem::path graph;
  std::filesystem::path rates;  // CSV from `rates`
  std::optional<std::string> targets;
  SimConfig config;
  std::optional<std::filesystem::path> out;      // per-replication CSV; stdout when unset
  std::optional<std::filesystem::path> summary;  // JSON
};
int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& log);

struct OracleArgs {
  std::filesystem::path graph;
  std::optional<std::string> targets;                // inverse + feasibility
  std::optional<std::filesystem::path> forward_rates;  // forward marginals of a rates CSV
  InverseOptions options;
  std::optional<std::filesystem::path> out;
};
int cmd_oracle(const OracleArgs& a, std::ostream& out, std::ostream& log);

struct EvaluateArgs {
  std::filesystem::path spec;
  std::optional<std::filesystem::path> out_dir;
  std::optional<double> horizon;
  std::optional<std::uint64_t> seed;
};
int cmd_evaluate(const EvaluateArgs& a, std::ostream& log);

// Reads a rates CSV written by `rates`.
std::vector<double> read_rates_csv(const std::filesystem::path& path);

}  // namespace csma::cli
