#include "csma/simulator.hpp"

#include <chrono>
#include <cmath>
#include <queue>
#include <random>
#include <stdexcept>
#include <string>

namespace csma {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct Event {
  double time;
  NodeId node;
  std::uint64_t generation;
};

struct Later {
  bool operator()(const Event& a, const Event& b) const {
    if (a.time != b.time) return a.time > b.time;
    return a.node > b.node;
  }
};

class Stream {
 public:
  explicit Stream(std::uint64_t seed) : rng_(seed) {}
  // Uniform on (0, 1] from the top 53 bits.
  double uniform() { return (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53; }
  double exponential(double rate) { return -std::log(uniform()) / rate; }

 private:
  std::mt19937_64 rng_;
};

struct Replication {
  std::vector<double> achieved;
  std::vector<std::vector<double>> batch_share;  // [batch][link]
  std::uint64_t events = 0;
};

Replication run_one(const ConflictGraph& g, std::span<const double> nu, const SimConfig& cfg, std::uint64_t seed) {
  const std::size_t n = g.size();
  const double t0 = cfg.warmup_fraction * cfg.horizon;
  const double window = cfg.horizon - t0;
  const std::size_t nb = std::max<std::size_t>(cfg.batches, 1);
  const double batch_len = window / static_cast<double>(nb);

  Replication rep;
  rep.achieved.assign(n, 0.0);
  rep.batch_share.assign(nb, std::vector<double>(n, 0.0));

  Stream rng(seed);
  std::vector<bool> active(n, false);
  std::vector<std::size_t> blocked(n, 0);
  std::vector<std::uint64_t> generation(n, 0);
  std::vector<double> since(n, 0.0);
  std::priority_queue<Event, std::vector<Event>, Later> queue;

  auto credit = [&](NodeId i, double a, double b) {
    a = std::max(a, t0);
    b = std::min(b, cfg.horizon);
    if (b <= a) return;
    rep.achieved[i] += b - a;
    auto first = static_cast<std::size_t>((a - t0) / batch_len);
    for (std::size_t k = std::min(first, nb - 1); k < nb; ++k) {
      const double lo = std::max(a, t0 + static_cast<double>(k) * batch_len);
      const double hi = std::min(b, k + 1 == nb ? cfg.horizon : t0 + static_cast<double>(k + 1) * batch_len);
      if (hi <= lo) {
        if (lo >= b) break;
        continue;
      }
      rep.batch_share[k][i] += hi - lo;
    }
  };
  auto schedule_backoff = [&](NodeId i, double now) {
    queue.push({now + rng.exponential(nu[i]), i, ++generation[i]});
  };

  for (NodeId i = 0; i < n; ++i) schedule_backoff(i, 0.0);

  while (!queue.empty()) {
    const Event ev = queue.top();
    if (ev.time >= cfg.horizon) break;
    queue.pop();
    const NodeId i = ev.node;
    if (ev.generation != generation[i]) continue;
    ++rep.events;
    const double now = ev.time;
    if (!active[i]) {
      if (blocked[i] != 0) throw std::logic_error("back-off expired on a blocked link");
      for (NodeId j : g.neighbors(i)) {
        if (active[j]) {
          throw std::logic_error("links " + std::to_string(i) + " and " + std::to_string(j) +
                                 " active simultaneously");
        }
      }
      active[i] = true;
      since[i] = now;
      for (NodeId j : g.neighbors(i)) {
        if (blocked[j]++ == 0) ++generation[j];  // suspend j's back-off
      }
      queue.push({now + rng.exponential(1.0), i, ++generation[i]});
    } else {
      active[i] = false;
      credit(i, since[i], now);
      for (NodeId j : g.neighbors(i)) {
        if (--blocked[j] == 0) schedule_backoff(j, now);
      }
      schedule_backoff(i, now);
    }
  }
  for (NodeId i = 0; i < n; ++i)
    if (active[i]) credit(i, since[i], cfg.horizon);

  for (double& a : rep.achieved) a /= window;
  for (std::size_t k = 0; k < nb; ++k) {
    const double len = k + 1 == nb ? cfg.horizon - (t0 + static_cast<double>(k) * batch_len) : batch_len;
    for (double& s : rep.batch_share[k]) s /= len;
  }
  return rep;
}

double sample_std_error(const std::vector<double>& xs) {
  const std::size_t m = xs.size();
  if (m < 2) return 0.0;
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(m);
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(m - 1) / static_cast<double>(m));
}

}  // namespace

std::uint64_t replication_seed(std::uint64_t seed, std::size_t replication) {
  return splitmix64(seed + (static_cast<std::uint64_t>(replication) + 1) * 0x9e3779b97f4a7c15ULL);
}

SimResult simulate(const ConflictGraph& g, std::span<const double> nu, const SimConfig& cfg,
                   const ThroughputVector* target) {
  if (!(cfg.horizon > 0.0)) throw std::invalid_argument("simulation horizon must be positive");
  if (!(cfg.warmup_fraction >= 0.0 && cfg.warmup_fraction < 1.0))
    throw std::invalid_argument("warm-up fraction must lie in [0, 1)");
  if (cfg.replications < 1) throw std::invalid_argument("at least one replication is required");
  if (nu.size() != g.size()) throw std::invalid_argument("rate vector size does not match graph");
  for (double v : nu)
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("back-off rates must be positive and finite");

  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = g.size();
  const std::size_t reps = cfg.replications;
  std::vector<Replication> runs(reps);
  std::string failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(reps); ++r) {
    try {
      runs[static_cast<std::size_t>(r)] = run_one(g, nu, cfg, replication_seed(cfg.seed, static_cast<std::size_t>(r)));
    } catch (const std::exception& e) {
#pragma omp critical(csma_sim_failure)
      if (failure.empty()) failure = e.what();
    }
  }
  if (!failure.empty()) throw std::logic_error(failure);

  SimResult out;
  out.achieved.assign(n, 0.0);
  out.standard_error.assign(n, 0.0);
  for (const auto& run : runs) {
    out.per_replication.push_back(run.achieved);
    out.events += run.events;
    for (std::size_t i = 0; i < n; ++i) out.achieved[i] += run.achieved[i] / static_cast<double>(reps);
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> xs;
    if (reps >= 2) {
      for (const auto& run : runs) xs.push_back(run.achieved[i]);
    } else {
      for (const auto& batch : runs.front().batch_share) xs.push_back(batch[i]);
    }
    out.standard_error[i] = sample_std_error(xs);
  }
  if (target) out.mean_relative_error = mean_relative_error(*target, out.achieved);
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

double mean_relative_error(std::span<const double> target, std::span<const double> achieved) {
  if (target.size() != achieved.size()) throw std::invalid_argument("target and achieved sizes differ");
  if (target.empty()) throw std::invalid_argument("mean relative error of an empty vector");
  double acc = 0.0;
  for (std::size_t i = 0; i < target.size(); ++i) {
    if (!(target[i] > 0.0)) throw std::invalid_argument("target throughput " + std::to_string(i) + " is not positive");
    acc += std::abs(achieved[i] - target[i]) / target[i];
  }
  return acc / static_cast<double>(target.size());
}

double mean_relative_error(const ThroughputVector& target, std::span<const double> achieved) {
  return mean_relative_error(target.values(), achieved);
}

}  // namespace csma
