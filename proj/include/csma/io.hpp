#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "csma/graph.hpp"
#include "csma/regions.hpp"
#include "csma/simulator.hpp"
#include "csma/throughput.hpp"

namespace csma::io {

// {"n": .., "edges": [[u, v], ...], "positions": [[x, y], ...], "seed": ..}
// with edges sorted; positions and seed only when present.
std::string graph_to_json(const ConflictGraph& g);
ConflictGraph graph_from_json(const std::string& text);
ConflictGraph read_graph(const std::filesystem::path& path);

// Round-trippable decimal form of a double.
std::string format_double(double x);

// Rates table: node_id,phi,nu,method,k_max (k_max empty when not applicable).
std::string rates_to_csv(const ThroughputVector& phi, const BackoffVector& nu);

// [{"variables": [..], "factors": [[i], [i, j], ..], "c": ..}, ..]
std::string regions_to_json(const RegionSet& set);

// replication,node,achieved
std::string simulation_to_csv(const SimResult& r);

// Targets as CSV with a node_id,phi header, or JSON: a plain array or {"phi": [..]}.
ThroughputVector read_targets(const std::filesystem::path& path, std::size_t n);

std::string read_file(const std::filesystem::path& path);
// Writes to a temporary sibling and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace csma::io
