#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "csma/chordal_exact.hpp"
#include "csma/chordality.hpp"
#include "csma/io.hpp"
#include "csma/kikuchi.hpp"
#include "csma/rates.hpp"
#include "json.hpp"

#ifndef CSMA_VERSION
#define CSMA_VERSION "0.0.0"
#endif

namespace csma::cli {

using nlohmann::json;

namespace {

std::string file_safe(std::string s) {
  for (char& c : s)
    if (c == ':' || c == '/' || c == ' ') c = '-';
  return s;
}

std::size_t parse_count(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  const unsigned long v = std::stoul(s, &used);
  if (used != s.size()) throw std::invalid_argument("bad " + what + ": " + s);
  return v;
}

BackoffVector run_method(const ConflictGraph& g, const ThroughputVector& phi, const MethodSpec& m) {
  switch (m.kind) {
    case Method::bethe: return bethe_rates(g, phi);
    case Method::triangle: return triangle_rates(g, phi);
    case Method::kmax: return kmax_rates_recursive(g, phi, m.resolved_k(g));
    case Method::kikuchi: {
      auto b = backoff_from_regions(build_kikuchi_regions(g, m.resolved_k(g)), phi);
      b.method = Method::kikuchi;
      b.k_max = m.resolved_k(g);
      b.gamma_warning = !(max_clique_load(g, phi).sum < 1.0);
      return b;
    }
    case Method::chordal_exact: return exact_rates_chordal(g, phi).rates;
    case Method::oracle: return inverse_rates_bruteforce(g, phi);
    case Method::regions: break;
  }
  throw std::invalid_argument("unsupported method");
}

std::optional<RegionSet> regions_for(const ConflictGraph& g, const MethodSpec& m) {
  switch (m.kind) {
    case Method::bethe: return build_kmax_regions(g, 2);
    case Method::triangle: return build_kmax_regions(g, 3);
    case Method::kmax: return build_kmax_regions(g, std::max<std::size_t>(m.resolved_k(g), 2));
    case Method::kikuchi: return build_kikuchi_regions(g, m.resolved_k(g));
    case Method::chordal_exact: return build_chordal_regions(g, clique_tree(g));
    default: return std::nullopt;
  }
}

json rates_json(const ThroughputVector& phi, const RatesOutcome& r, const MethodSpec& m) {
  json nodes = json::array();
  for (std::size_t i = 0; i < r.rates.size(); ++i) nodes.push_back({{"node_id", i}, {"phi", phi[i]}, {"nu", r.rates[i]}});
  json j{{"method", m.label()},
         {"total_seconds", r.total_seconds},
         {"per_node_seconds", r.per_node_seconds},
         {"gamma_warning", r.rates.gamma_warning},
         {"nodes", std::move(nodes)}};
  j["k_max"] = r.rates.k_max ? json(*r.rates.k_max) : json(nullptr);
  return j;
}

void warn_gamma(const BackoffVector& b, std::ostream& log) {
  if (b.gamma_warning) log << "warning: some maximal clique has target sum >= 1; targets are not achievable\n";
}

}  // namespace

std::string MethodSpec::label() const {
  switch (kind) {
    case Method::bethe: return "bethe";
    case Method::triangle: return "triangle";
    case Method::kmax: return "kmax:" + (k_is_n ? std::string("n") : std::to_string(*k_max));
    case Method::kikuchi: return "kikuchi:" + (k_is_n ? std::string("n") : std::to_string(*k_max));
    case Method::chordal_exact: return "chordal-exact";
    case Method::oracle: return "oracle";
    case Method::regions: return "regions";
  }
  return "unknown";
}

std::size_t MethodSpec::resolved_k(const ConflictGraph& g) const {
  if (k_is_n) return std::max<std::size_t>(g.size(), 2);
  return k_max.value_or(2);
}

MethodSpec parse_method(const std::string& text) {
  MethodSpec m;
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  auto parse_k = [&](std::size_t min_k) {
    if (arg.empty()) throw std::invalid_argument("method " + head + " needs a k_max, e.g. " + head + ":3 or " + head + ":n");
    if (arg == "n") {
      m.k_is_n = true;
    } else {
      m.k_max = parse_count(arg, "k_max");
      if (*m.k_max < min_k) throw std::invalid_argument("k_max must be at least " + std::to_string(min_k));
    }
  };
  if (head == "bethe") {
    m.kind = Method::bethe;
    m.k_max = 2;
  } else if (head == "triangle") {
    m.kind = Method::triangle;
    m.k_max = 3;
  } else if (head == "kmax") {
    m.kind = Method::kmax;
    parse_k(1);
  } else if (head == "kikuchi") {
    m.kind = Method::kikuchi;
    parse_k(2);
  } else if (head == "chordal-exact") {
    m.kind = Method::chordal_exact;
  } else if (head == "oracle") {
    m.kind = Method::oracle;
  } else {
    throw std::invalid_argument("unknown method: " + text);
  }
  if ((m.kind == Method::bethe || m.kind == Method::triangle || m.kind == Method::chordal_exact ||
       m.kind == Method::oracle) &&
      !arg.empty())
    throw std::invalid_argument("method " + head + " takes no argument");
  return m;
}

RatesOutcome compute_rates(const ConflictGraph& g, const ThroughputVector& phi, const MethodSpec& method,
                           std::size_t repeat) {
  RatesOutcome out;
  out.total_seconds = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < std::max<std::size_t>(repeat, 1); ++r) {
    const auto start = std::chrono::steady_clock::now();
    out.rates = run_method(g, phi, method);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.total_seconds = std::min(out.total_seconds, secs);
  }
  out.per_node_seconds = g.size() ? out.total_seconds / static_cast<double>(g.size()) : 0.0;
  return out;
}

ThroughputVector resolve_targets(const ConflictGraph& g, const std::string& spec) {
  auto load_of = [&](std::size_t prefix) {
    std::size_t used = 0;
    const std::string s = spec.substr(prefix);
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("bad load in targets: " + spec);
    return v;
  };
  if (spec.rfind("uniform:", 0) == 0) return uniform_over_max_clique(g, load_of(8));
  if (spec.rfind("degree:", 0) == 0) return degree_scaled(g, load_of(7));
  return io::read_targets(spec, g.size());
}

std::vector<double> read_rates_csv(const std::filesystem::path& path) {
  std::istringstream in(io::read_file(path));
  std::string line;
  std::vector<std::pair<std::size_t, double>> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line.rfind("node_id", 0) == 0) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() < 3) throw std::invalid_argument("rates CSV rows need node_id,phi,nu");
    rows.emplace_back(std::stoul(cells[0]), std::stod(cells[2]));
  }
  std::vector<double> nu(rows.size(), 0.0);
  for (auto [i, v] : rows) {
    if (i >= nu.size()) throw std::invalid_argument("rates CSV node ids must be 0..n-1");
    nu[i] = v;
  }
  return nu;
}

int cmd_generate(const GenerateArgs& a, std::ostream& log) {
  const ConflictGraph g = random_geometric_graph(a.n, a.radius, a.seed);
  io::write_file_atomic(a.out, io::graph_to_json(g));
  log << "edges: " << g.num_edges() << "\nmax clique size: " << clique_number(g) << '\n';
  return 0;
}

int cmd_rates(const RatesArgs& a, std::ostream& out, std::ostream& log) {
  const ConflictGraph g = io::read_graph(a.graph);
  const ThroughputVector phi = resolve_targets(g, a.targets);
  const MethodSpec m = parse_method(a.method);
  const RatesOutcome r = compute_rates(g, phi, m, a.repeat);
  warn_gamma(r.rates, log);

  const std::string csv = io::rates_to_csv(phi, r.rates);
  if (a.out) {
    io::write_file_atomic(*a.out, csv);
  } else {
    out << csv;
  }
  if (a.json_out) io::write_file_atomic(*a.json_out, rates_json(phi, r, m).dump(1) + "\n");
  if (a.regions_out) {
    const auto regions = regions_for(g, m);
    if (!regions) throw std::invalid_argument("method " + m.label() + " has no region set");
    io::write_file_atomic(*a.regions_out, io::regions_to_json(*regions));
  }
  log << "method: " << m.label() << "\ntotal seconds: " << io::format_double(r.total_seconds)
      << "\nper-node seconds: " << io::format_double(r.per_node_seconds) << '\n';
  return 0;
}

int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& log) {
  const ConflictGraph g = io::read_graph(a.graph);
  const std::vector<double> nu = read_rates_csv(a.rates);
  if (nu.size() != g.size()) throw std::invalid_argument("rates file does not match the graph size");
  std::optional<ThroughputVector> target;
  if (a.targets) target = resolve_targets(g, *a.targets);
  const SimResult r = simulate(g, nu, a.config, target ? &*target : nullptr);

  const std::string csv = io::simulation_to_csv(r);
  if (a.out) {
    io::write_file_atomic(*a.out, csv);
  } else {
    out << csv;
  }
  json summary{{"horizon", a.config.horizon},
               {"warmup_fraction", a.config.warmup_fraction},
               {"seed", a.config.seed},
               {"replications", a.config.replications},
               {"achieved", r.achieved},
               {"standard_error", r.standard_error},
               {"events", r.events},
               {"wall_seconds", r.wall_seconds}};
  summary["mean_relative_error"] = r.mean_relative_error ? json(*r.mean_relative_error) : json(nullptr);
  if (a.summary) io::write_file_atomic(*a.summary, summary.dump(1) + "\n");
  if (r.mean_relative_error) log << "mean relative error: " << io::format_double(*r.mean_relative_error) << '\n';
  log << "events: " << r.events << "\nwall seconds: " << io::format_double(r.wall_seconds) << '\n';
  return 0;
}

int cmd_oracle(const OracleArgs& a, std::ostream& out, std::ostream& log) {
  const ConflictGraph g = io::read_graph(a.graph);
  if (a.forward_rates.has_value() == a.targets.has_value())
    throw std::invalid_argument("oracle needs exactly one of --targets or --forward");
  json j;
  std::string csv;
  if (a.forward_rates) {
    const auto nu = read_rates_csv(*a.forward_rates);
    const ForwardResult f = forward_throughputs(g, nu, a.options.cap);
    std::ostringstream os;
    os << "node_id,nu,phi\n";
    for (std::size_t i = 0; i < nu.size(); ++i)
      os << i << ',' << io::format_double(nu[i]) << ',' << io::format_double(f.phi[i]) << '\n';
    csv = os.str();
    log << "Z: " << io::format_double(f.Z) << '\n';
  } else {
    const ThroughputVector phi = resolve_targets(g, *a.targets);
    const FeasibilityReport rep = feasibility_check(g, phi, a.options);
    log << "feasibility: " << to_string(rep.verdict) << " (" << rep.detail << ")\nmax clique sum: "
        << io::format_double(rep.max_clique.sum) << '\n';
    if (rep.verdict == Feasibility::infeasible) {
      throw InfeasibleInput("targets are infeasible: maximal clique sum " + io::format_double(rep.max_clique.sum),
                            rep.max_clique.clique.members);
    }
    const BackoffVector nu = inverse_rates_bruteforce(g, phi, a.options);
    csv = io::rates_to_csv(phi, nu);
  }
  if (a.out) {
    io::write_file_atomic(*a.out, csv);
  } else {
    out << csv;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// evaluate

namespace {

struct GraphItem {
  std::string id;
  std::optional<double> radius;
  std::optional<std::uint64_t> seed;
  ConflictGraph graph;
  std::size_t max_clique = 0;
};

struct EvalItem {
  std::size_t graph = 0;
  std::string targets;
  MethodSpec method;
  std::uint64_t sim_seed = 0;
  std::string status = "ok";
  std::optional<double> mre;
  RatesOutcome rates;
  std::optional<ThroughputVector> phi;
  std::optional<SimResult> sim;
};

struct Evaluation {
  std::string mode = "simulate";
  SimConfig sim;
  std::size_t cap = kDefaultStateCap;
};

std::vector<GraphItem> load_graphs(const json& spec, const std::filesystem::path& base) {
  std::vector<GraphItem> out;
  const json& gs = spec.at("graphs");
  if (gs.contains("files")) {
    for (const auto& f : gs["files"]) {
      std::filesystem::path p = f.get<std::string>();
      if (p.is_relative()) p = base / p;
      GraphItem item;
      item.id = p.stem().string();
      item.graph = io::read_graph(p);
      item.seed = item.graph.seed();
      out.push_back(std::move(item));
    }
  } else {
    const auto n = gs.at("n").get<std::size_t>();
    std::vector<double> radii;
    if (gs.at("radius").is_array()) {
      radii = gs["radius"].get<std::vector<double>>();
    } else {
      radii.push_back(gs["radius"].get<double>());
    }
    const auto count = gs.value("count", std::size_t{1});
    const auto seed = gs.value("seed", std::uint64_t{1});
    for (std::size_t r = 0; r < radii.size(); ++r) {
      for (std::size_t k = 0; k < count; ++k) {
        GraphItem item;
        item.radius = radii[r];
        item.seed = seed + k;  // same point sets across radii
        std::ostringstream id;
        id << "R" << radii[r] << "_g" << k;
        item.id = id.str();
        item.graph = random_geometric_graph(n, radii[r], *item.seed);
        out.push_back(std::move(item));
      }
    }
  }
  for (auto& g : out) g.max_clique = clique_number(g.graph);
  return out;
}

}  // namespace

int cmd_evaluate(const EvaluateArgs& a, std::ostream& log) {
  json spec = json::parse(io::read_file(a.spec));
  const std::filesystem::path base = a.spec.has_parent_path() ? a.spec.parent_path() : ".";
  std::filesystem::path out_dir = a.out_dir ? *a.out_dir : std::filesystem::path(spec.value("output", "evaluation"));
  if (!a.out_dir && out_dir.is_relative()) out_dir = base / out_dir;

  Evaluation ev;
  const json evj = spec.value("evaluation", json::object());
  ev.mode = evj.value("mode", "simulate");
  if (ev.mode != "simulate" && ev.mode != "exact-forward")
    throw std::invalid_argument("evaluation mode must be simulate or exact-forward");
  ev.sim.horizon = a.horizon ? *a.horizon : evj.value("horizon", 1e6);
  ev.sim.warmup_fraction = evj.value("warmup_fraction", 0.1);
  ev.sim.replications = evj.value("replications", std::size_t{1});
  ev.sim.seed = a.seed ? *a.seed : evj.value("seed", std::uint64_t{1});
  ev.cap = evj.value("cap", kDefaultStateCap);
  // record effective values so the manifest reproduces the run
  spec["evaluation"] = {{"mode", ev.mode},
                        {"horizon", ev.sim.horizon},
                        {"warmup_fraction", ev.sim.warmup_fraction},
                        {"replications", ev.sim.replications},
                        {"seed", ev.sim.seed},
                        {"cap", ev.cap}};
  spec["output"] = out_dir.string();

  std::vector<std::string> target_specs;
  if (spec.at("targets").is_array()) {
    target_specs = spec["targets"].get<std::vector<std::string>>();
  } else {
    target_specs.push_back(spec["targets"].get<std::string>());
  }
  std::vector<MethodSpec> methods;
  for (const auto& m : spec.at("methods")) methods.push_back(parse_method(m.get<std::string>()));
  if (methods.empty()) throw std::invalid_argument("experiment spec lists no methods");
  if (target_specs.empty()) throw std::invalid_argument("experiment spec lists no targets");

  const std::vector<GraphItem> graphs = load_graphs(spec, base);
  if (ev.mode == "exact-forward") {
    for (const auto& g : graphs)
      if (g.graph.size() > ev.cap)
        throw std::invalid_argument("exact-forward evaluation needs n <= " + std::to_string(ev.cap) + " (graph " +
                                    g.id + " has " + std::to_string(g.graph.size()) + ")");
  }
  for (const auto& g : graphs) io::write_file_atomic(out_dir / "graphs" / (g.id + ".json"), io::graph_to_json(g.graph));

  std::vector<EvalItem> items;
  for (std::size_t gi = 0; gi < graphs.size(); ++gi)
    for (const auto& t : target_specs)
      for (const auto& m : methods) {
        EvalItem it;
        it.graph = gi;
        it.targets = t;
        it.method = m;
        it.sim_seed = replication_seed(ev.sim.seed, items.size());
        items.push_back(std::move(it));
      }

  // Rates first, one at a time, so the timings are not disturbed by other items.
  for (auto& it : items) {
    const GraphItem& g = graphs[it.graph];
    try {
      it.phi = resolve_targets(g.graph, it.targets);
      it.rates = compute_rates(g.graph, *it.phi, it.method);
    } catch (const InfeasibleInput& e) {
      it.status = std::string("infeasible: ") + e.what();
    } catch (const std::exception& e) {
      it.status = std::string("error: ") + e.what();
    }
  }

#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(items.size()); ++k) {
    EvalItem& it = items[static_cast<std::size_t>(k)];
    if (it.status != "ok") continue;
    const GraphItem& g = graphs[it.graph];
    try {
      std::vector<double> achieved;
      if (ev.mode == "simulate") {
        SimConfig cfg = ev.sim;
        cfg.seed = it.sim_seed;
        it.sim = simulate(g.graph, it.rates.rates.nu, cfg, &*it.phi);
        achieved = it.sim->achieved;
      } else {
        achieved = forward_throughputs(g.graph, it.rates.rates.nu, ev.cap).phi;
      }
      it.mre = mean_relative_error(*it.phi, achieved);

      json item{{"graph_id", g.id},
                {"targets", it.targets},
                {"method", it.method.label()},
                {"k_max", it.rates.rates.k_max ? json(*it.rates.rates.k_max) : json(nullptr)},
                {"mean_relative_error", *it.mre},
                {"rate_seconds", it.rates.total_seconds},
                {"phi", std::vector<double>(it.phi->values().begin(), it.phi->values().end())},
                {"nu", it.rates.rates.nu},
                {"achieved", achieved},
                {"gamma_warning", it.rates.rates.gamma_warning}};
      if (it.sim) {
        item["sim_seed"] = it.sim_seed;
        item["standard_error"] = it.sim->standard_error;
        item["events"] = it.sim->events;
      }
      io::write_file_atomic(out_dir / "items" / (file_safe(g.id + "__" + it.targets + "__" + it.method.label()) + ".json"),
                            item.dump(1) + "\n");
    } catch (const std::exception& e) {
      it.status = std::string("error: ") + e.what();
    }
  }

  std::ostringstream results;
  results << "graph_id,radius,graph_seed,n,edges,max_clique,targets,method,k_max,status,mre,rate_seconds,"
             "per_node_seconds,sim_seed\n";
  struct Cell {
    std::vector<double> mres;
  };
  std::map<std::tuple<double, std::string, std::string>, Cell> cells;
  std::map<std::tuple<double, std::string, std::string>, std::size_t> cell_order;
  for (const auto& it : items) {
    const GraphItem& g = graphs[it.graph];
    const bool ok = it.status == "ok";
    std::string status = it.status;
    std::replace(status.begin(), status.end(), ',', ';');
    std::replace(status.begin(), status.end(), '\n', ' ');
    results << g.id << ',' << (g.radius ? io::format_double(*g.radius) : "") << ','
            << (g.seed ? std::to_string(*g.seed) : "") << ',' << g.graph.size() << ',' << g.graph.num_edges() << ','
            << g.max_clique << ',' << it.targets << ',' << it.method.label() << ','
            << (ok && it.rates.rates.k_max ? std::to_string(*it.rates.rates.k_max) : "") << ',' << status << ','
            << (it.mre ? io::format_double(*it.mre) : "") << ','
            << (ok ? io::format_double(it.rates.total_seconds) : "") << ','
            << (ok ? io::format_double(it.rates.per_node_seconds) : "") << ','
            << (ev.mode == "simulate" ? std::to_string(it.sim_seed) : "") << '\n';
    const auto key = std::make_tuple(g.radius.value_or(-1.0), it.targets, it.method.label());
    cell_order.emplace(key, cell_order.size());
    if (it.mre) cells[key].mres.push_back(*it.mre);
  }

  std::vector<std::pair<std::size_t, std::tuple<double, std::string, std::string>>> ordered;
  for (const auto& [key, idx] : cell_order) ordered.emplace_back(idx, key);
  std::sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::ostringstream aggregate;
  aggregate << "radius,targets,method,count,min_mre,mean_mre,max_mre\n";
  for (const auto& [idx, key] : ordered) {
    const auto& mres = cells[key].mres;
    const double radius = std::get<0>(key);
    aggregate << (radius < 0.0 ? "" : io::format_double(radius)) << ',' << std::get<1>(key) << ','
              << std::get<2>(key) << ',' << mres.size() << ',';
    if (mres.empty()) {
      aggregate << ",,\n";
      continue;
    }
    double sum = 0.0;
    for (double v : mres) sum += v;
    aggregate << io::format_double(*std::min_element(mres.begin(), mres.end())) << ','
              << io::format_double(sum / static_cast<double>(mres.size())) << ','
              << io::format_double(*std::max_element(mres.begin(), mres.end())) << '\n';
  }

  // Rate timings ordered by max clique size.
  std::vector<const EvalItem*> timed;
  for (const auto& it : items)
    if (it.status == "ok") timed.push_back(&it);
  std::stable_sort(timed.begin(), timed.end(), [&](const EvalItem* x, const EvalItem* y) {
    return graphs[x->graph].max_clique < graphs[y->graph].max_clique;
  });
  std::ostringstream timing;
  timing << "graph_id,n,max_clique,targets,method,k_max,total_seconds,per_node_seconds\n";
  for (const EvalItem* it : timed) {
    const GraphItem& g = graphs[it->graph];
    timing << g.id << ',' << g.graph.size() << ',' << g.max_clique << ',' << it->targets << ',' << it->method.label()
           << ',' << (it->rates.rates.k_max ? std::to_string(*it->rates.rates.k_max) : "") << ','
           << io::format_double(it->rates.total_seconds) << ',' << io::format_double(it->rates.per_node_seconds)
           << '\n';
  }

  json seeds = json::array();
  for (const auto& g : graphs) seeds.push_back({{"graph_id", g.id}, {"seed", g.seed ? json(*g.seed) : json(nullptr)}});
  json sim_seeds = json::array();
  for (const auto& it : items) sim_seeds.push_back(it.sim_seed);
  const json manifest{{"tool", "csma"},
                      {"version", CSMA_VERSION},
                      {"spec", spec},
                      {"graph_seeds", seeds},
                      {"item_seeds", sim_seeds},
                      {"item_seed_rule", "splitmix64(evaluation.seed + (item_index + 1) * 0x9e3779b97f4a7c15)"},
                      {"outputs", {"results.csv", "aggregate.csv", "timing.csv", "graphs/", "items/"}}};

  io::write_file_atomic(out_dir / "results.csv", results.str());
  io::write_file_atomic(out_dir / "aggregate.csv", aggregate.str());
  io::write_file_atomic(out_dir / "timing.csv", timing.str());
  io::write_file_atomic(out_dir / "manifest.json", manifest.dump(1) + "\n");

  std::size_t failed = 0;
  for (const auto& it : items) failed += it.status != "ok";
  log << "items: " << items.size() << " (" << failed << " without result)\noutput: " << out_dir.string() << '\n';
  log << aggregate.str();
  return 0;
}

}  // namespace csma::cli
