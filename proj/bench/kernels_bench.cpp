#include <benchmark/benchmark.h>

#include <random>

#include "csma/kernels.hpp"
#include "csma/oracle.hpp"
#include "csma/rates.hpp"

using namespace csma;

namespace {

const ConflictGraph& dense_graph() {
  static const ConflictGraph g = random_geometric_graph(100, 0.2, 11);
  return g;
}

const ThroughputVector& targets() {
  static const ThroughputVector phi = uniform_over_max_clique(dense_graph(), 0.85);
  return phi;
}

template <auto Kernel>
void bm_cliques(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(dense_graph(), 5));
}

template <auto Kernel>
void bm_kmax(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(dense_graph(), targets().values(), 100));
}

template <auto Kernel>
void bm_regions(benchmark::State& state) {
  static const auto inc = region_incidence(build_kmax_regions(dense_graph(), 4), targets());
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(inc, targets().values()));
}

template <auto Kernel>
void bm_forward(benchmark::State& state) {
  static const auto g = random_geometric_graph(24, 0.2, 3);
  static const auto omega = enumerate_independent_sets(g);
  static const std::vector<double> log_nu = [] {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 2.0);
    std::vector<double> v(24);
    for (double& x : v) x = u(rng);
    return v;
  }();
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(omega.independent_sets, log_nu));
}

}  // namespace

BENCHMARK(bm_cliques<kernels::serial::enumerate_cliques>)->Name("enumerate_cliques/serial");
BENCHMARK(bm_cliques<kernels::omp::enumerate_cliques>)->Name("enumerate_cliques/omp");
BENCHMARK(bm_kmax<kernels::serial::kmax_log_rates>)->Name("kmax_log_rates/serial");
BENCHMARK(bm_kmax<kernels::omp::kmax_log_rates>)->Name("kmax_log_rates/omp");
BENCHMARK(bm_regions<kernels::serial::region_log_rates>)->Name("region_log_rates/serial");
BENCHMARK(bm_regions<kernels::omp::region_log_rates>)->Name("region_log_rates/omp");
BENCHMARK(bm_forward<kernels::serial::forward_sums>)->Name("forward_sums/serial");
BENCHMARK(bm_forward<kernels::omp::forward_sums>)->Name("forward_sums/omp");

BENCHMARK_MAIN();
