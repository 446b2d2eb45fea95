#include "csma/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace csma::io {

using nlohmann::json;

std::string graph_to_json(const ConflictGraph& g) {
  json j;
  j["n"] = g.size();
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  j["edges"] = std::move(edges);
  if (g.positions()) {
    json pos = json::array();
    for (const Point& p : *g.positions()) pos.push_back({p.x, p.y});
    j["positions"] = std::move(pos);
  }
  if (g.seed()) j["seed"] = *g.seed();
  return j.dump(1) + "\n";
}

ConflictGraph graph_from_json(const std::string& text) {
  const json j = json::parse(text);
  const auto n = j.at("n").get<std::size_t>();
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw std::invalid_argument("graph edges must be [u, v] pairs");
    edges.emplace_back(e[0].get<NodeId>(), e[1].get<NodeId>());
  }
  ConflictGraph g(n, edges);
  std::vector<Point> positions;
  if (j.contains("positions")) {
    for (const auto& p : j["positions"]) positions.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    if (positions.size() != n) throw std::invalid_argument("graph positions do not match n");
  }
  std::optional<std::uint64_t> seed;
  if (j.contains("seed")) seed = j["seed"].get<std::uint64_t>();
  if (!positions.empty() || seed) g = g.with_metadata(std::move(positions), seed);
  return g;
}

ConflictGraph read_graph(const std::filesystem::path& path) { return graph_from_json(read_file(path)); }

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string rates_to_csv(const ThroughputVector& phi, const BackoffVector& nu) {
  std::ostringstream os;
  os << "node_id,phi,nu,method,k_max\n";
  for (std::size_t i = 0; i < nu.size(); ++i) {
    os << i << ',' << format_double(phi[i]) << ',' << format_double(nu[i]) << ',' << to_string(nu.method) << ',';
    if (nu.k_max) os << *nu.k_max;
    os << '\n';
  }
  return os.str();
}

std::string regions_to_json(const RegionSet& set) {
  json out = json::array();
  for (const Region& r : set.regions) {
    json factors = json::array();
    if (r.node_factor) factors.push_back({*r.node_factor});
    for (const Edge& e : r.factor_edges) factors.push_back({e.u, e.v});
    out.push_back({{"variables", r.variables}, {"factors", std::move(factors)}, {"c", r.counting_number}});
  }
  return out.dump(1) + "\n";
}

std::string simulation_to_csv(const SimResult& r) {
  std::ostringstream os;
  os << "replication,node,achieved\n";
  for (std::size_t k = 0; k < r.per_replication.size(); ++k)
    for (std::size_t i = 0; i < r.per_replication[k].size(); ++i)
      os << k << ',' << i << ',' << format_double(r.per_replication[k][i]) << '\n';
  return os.str();
}

ThroughputVector read_targets(const std::filesystem::path& path, std::size_t n) {
  const std::string text = read_file(path);
  std::vector<double> phi;
  if (path.extension() == ".json") {
    const json j = json::parse(text);
    phi = (j.is_object() ? j.at("phi") : j).get<std::vector<double>>();
  } else {
    std::istringstream in(text);
    std::string line;
    std::vector<std::pair<std::size_t, double>> rows;
    while (std::getline(in, line)) {
      if (line.empty() || line.rfind("node_id", 0) == 0) continue;
      const auto comma = line.find(',');
      if (comma == std::string::npos) throw std::invalid_argument("targets CSV rows must be node_id,phi");
      rows.emplace_back(std::stoul(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    }
    phi.assign(rows.size(), 0.0);
    std::vector<bool> seen(rows.size(), false);
    for (auto [i, v] : rows) {
      if (i >= rows.size() || seen[i]) throw std::invalid_argument("targets CSV node ids must be 0..n-1, each once");
      seen[i] = true;
      phi[i] = v;
    }
  }
  if (phi.size() != n) {
    throw std::invalid_argument("targets file has " + std::to_string(phi.size()) + " entries for " +
                                std::to_string(n) + " nodes");
  }
  return ThroughputVector(std::move(phi));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
    if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace csma::io
