#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

using namespace csma;

int main(int argc, char** argv) {
  CLI::App app{"CSMA back-off rates from region-based free energy approximations"};
  app.require_subcommand(1);

  cli::GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "random geometric conflict graph");
  generate->add_option("--n", gen.n, "number of links")->check(CLI::PositiveNumber);
  generate->add_option("--radius", gen.radius, "interference radius in the unit square")->check(CLI::PositiveNumber);
  generate->add_option("--seed", gen.seed, "generator seed");
  generate->add_option("--out", gen.out, "graph JSON")->required();

  cli::RatesArgs ra;
  std::string ra_out, ra_json, ra_regions;
  auto* rates = app.add_subcommand("rates", "back-off rates for target throughputs");
  rates->add_option("--graph", ra.graph, "graph JSON")->required()->check(CLI::ExistingFile);
  rates->add_option("--targets", ra.targets, "uniform:<load> | degree:<load> | targets file")->required();
  rates->add_option("--method", ra.method,
                    "bethe | triangle | kmax:<k> | kmax:n | kikuchi:<k> | kikuchi:n | chordal-exact | oracle")
      ->capture_default_str();
  rates->add_option("--out", ra_out, "rates CSV (default stdout)");
  rates->add_option("--json", ra_json, "rates and timing as JSON");
  rates->add_option("--regions", ra_regions, "region set JSON");
  rates->add_option("--repeat", ra.repeat, "time the best of this many runs")->check(CLI::PositiveNumber);

  cli::SimulateArgs sa;
  std::string sa_targets, sa_out, sa_summary;
  auto* sim = app.add_subcommand("simulate", "event-driven CSMA simulation");
  sim->add_option("--graph", sa.graph, "graph JSON")->required()->check(CLI::ExistingFile);
  sim->add_option("--rates", sa.rates, "rates CSV")->required()->check(CLI::ExistingFile);
  sim->add_option("--targets", sa_targets, "targets for the mean relative error");
  sim->add_option("--horizon", sa.config.horizon)->capture_default_str()->check(CLI::PositiveNumber);
  sim->add_option("--warmup", sa.config.warmup_fraction)->capture_default_str()->check(CLI::Range(0.0, 0.999999));
  sim->add_option("--seed", sa.config.seed)->capture_default_str();
  sim->add_option("--replications", sa.config.replications)->capture_default_str()->check(CLI::PositiveNumber);
  sim->add_option("--out", sa_out, "per-replication CSV (default stdout)");
  sim->add_option("--summary", sa_summary, "JSON summary");

  cli::EvaluateArgs ea;
  std::string ea_out;
  double ea_horizon = 0.0;
  std::uint64_t ea_seed = 0;
  auto* eval = app.add_subcommand("evaluate", "run an experiment spec");
  eval->add_option("spec", ea.spec, "experiment spec JSON")->required()->check(CLI::ExistingFile);
  eval->add_option("--out-dir", ea_out);
  auto* eval_horizon = eval->add_option("--horizon", ea_horizon)->check(CLI::PositiveNumber);
  auto* eval_seed = eval->add_option("--seed", ea_seed);

  cli::OracleArgs oa;
  std::string oa_targets, oa_forward, oa_out;
  auto* oracle = app.add_subcommand("oracle", "brute-force forward marginals or inverse rates");
  oracle->add_option("--graph", oa.graph, "graph JSON")->required()->check(CLI::ExistingFile);
  auto* oa_t = oracle->add_option("--targets", oa_targets, "targets: feasibility check and inverse rates");
  auto* oa_f = oracle->add_option("--forward", oa_forward, "rates CSV: forward marginals")->check(CLI::ExistingFile);
  oa_t->excludes(oa_f);
  oracle->add_option("--tol", oa.options.tol)->capture_default_str();
  oracle->add_option("--max-iter", oa.options.max_iter)->capture_default_str();
  oracle->add_option("--cap", oa.options.cap, "state-space node cap")->capture_default_str()->check(CLI::Range(1, 63));
  oracle->add_option("--out", oa_out, "CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*generate) return cli::cmd_generate(gen, std::cerr);
    if (*rates) {
      if (!ra_out.empty()) ra.out = ra_out;
      if (!ra_json.empty()) ra.json_out = ra_json;
      if (!ra_regions.empty()) ra.regions_out = ra_regions;
      return cli::cmd_rates(ra, std::cout, std::cerr);
    }
    if (*sim) {
      if (!sa_targets.empty()) sa.targets = sa_targets;
      if (!sa_out.empty()) sa.out = sa_out;
      if (!sa_summary.empty()) sa.summary = sa_summary;
      return cli::cmd_simulate(sa, std::cout, std::cerr);
    }
    if (*eval) {
      if (!ea_out.empty()) ea.out_dir = ea_out;
      if (*eval_horizon) ea.horizon = ea_horizon;
      if (*eval_seed) ea.seed = ea_seed;
      return cli::cmd_evaluate(ea, std::cerr);
    }
    if (*oracle) {
      if (*oa_t) oa.targets = oa_targets;
      if (*oa_f) oa.forward_rates = oa_forward;
      if (!oa_out.empty()) oa.out = oa_out;
      return cli::cmd_oracle(oa, std::cout, std::cerr);
    }
  } catch (const InfeasibleInput& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    if (!e.offending().empty()) {
      std::cerr << "offending links:";
      for (NodeId v : e.offending()) std::cerr << ' ' << v;
      std::cerr << '\n';
    }
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
