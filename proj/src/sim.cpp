#include "erisk/sim.hpp"

#include "erisk/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

namespace erisk {

namespace {

constexpr std::uint64_t kBatch = 4096;

enum class Fate : unsigned char { kRun, kKeep, kZero };

struct Chain {
  std::vector<double> factor;
  std::vector<std::vector<double>> cumulative;
  std::vector<std::vector<std::size_t>> target;
  std::vector<Fate> fate;
};

struct BatchSum {
  double sum = 0;
  double cut_mass = 0;
  std::uint64_t cut = 0;
};

BatchSum run_batch(const Chain& c, std::size_t initial, std::uint64_t count, std::uint64_t seed, std::uint64_t index,
                   const SimOptions& opts) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  BatchSum out;
  for (std::uint64_t k = 0; k < count; ++k) {
    std::size_t s = initial;
    double w = 1.0;
    bool done = false;
    for (std::uint64_t step = 0; step < opts.max_steps; ++step) {
      if (c.fate[s] == Fate::kKeep) {
        out.sum += w;
        done = true;
        break;
      }
      if (c.fate[s] == Fate::kZero) {
        done = true;
        break;
      }
      w *= c.factor[s];
      if (w < opts.floor) break;
      const double u = unit(rng);
      const auto& cum = c.cumulative[s];
      const std::size_t i = static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), u) - cum.begin());
      s = c.target[s][std::min(i, cum.size() - 1)];
    }
    if (!done) {
      out.cut_mass += w;
      ++out.cut;
    }
  }
  return out;
}

}  // namespace

SimEstimate estimate_utility(const Game& g, const RiskParams& rp, const Strategy& max, const Strategy& min,
                             const SimOptions& opts) {
  if (opts.samples < 1) throw std::invalid_argument("simulation needs at least one sample");
  if (max.owner != Player::kMax || min.owner != Player::kMin)
    throw std::invalid_argument("profile strategies have the wrong owners");
  check_strategy(g, max);
  check_strategy(g, min);
  const std::vector<std::size_t> choice = combine(g, max, min);
  const std::size_t n = g.size();

  Chain c;
  c.factor.resize(n);
  c.cumulative.resize(n);
  c.target.resize(n);
  c.fate.assign(n, Fate::kRun);
  const double b = rp.base.to_double();
  const double gamma = rp.effective_gamma().to_double();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t s = 0; s < n; ++s) {
    c.factor[s] = g.reward(s) == 0 ? 1.0 : std::pow(b, -gamma * static_cast<double>(g.reward(s)));
    double acc = 0;
    for (const Transition& t : g.action(s, choice[s]).distribution) {
      acc += t.probability.to_double();
      c.cumulative[s].push_back(acc);
      c.target[s].push_back(t.target);
      adj[s].push_back(t.target);
    }
  }
  std::size_t count = 0;
  const std::vector<std::size_t> comp = strongly_connected_components(adj, &count);
  std::vector<bool> bottom(count, true);
  std::vector<bool> zero(count, true);
  for (std::size_t s = 0; s < n; ++s) {
    if (g.reward(s) != 0) zero[comp[s]] = false;
    for (std::size_t t : adj[s])
      if (comp[t] != comp[s]) bottom[comp[s]] = false;
  }
  for (std::size_t s = 0; s < n; ++s)
    if (bottom[comp[s]]) c.fate[s] = zero[comp[s]] ? Fate::kKeep : Fate::kZero;

  // A chain without branching from the initial state yields one trajectory.
  bool branching = false;
  {
    std::vector<bool> seen(n, false);
    std::size_t s = g.initial();
    while (!seen[s] && c.fate[s] == Fate::kRun) {
      seen[s] = true;
      if (adj[s].size() > 1) {
        branching = true;
        break;
      }
      s = adj[s][0];
    }
  }
  const std::uint64_t batches = branching ? (opts.samples + kBatch - 1) / kBatch : 1;
  std::vector<BatchSum> sums(batches);
  auto size_of = [&](std::uint64_t i) {
    if (!branching) return std::uint64_t{1};
    return std::min(kBatch, opts.samples - i * kBatch);
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(batches)));
  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    for (std::uint64_t i = next++; i < batches; i = next++) sums[i] = run_batch(c, g.initial(), size_of(i), opts.seed, i, opts);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();

  SimEstimate out;
  double sum = 0;
  double cut_mass = 0;
  for (const BatchSum& bs : sums) {
    sum += bs.sum;
    cut_mass += bs.cut_mass;
    out.cut += bs.cut;
  }
  const double drawn = branching ? static_cast<double>(opts.samples) : 1.0;
  out.samples = opts.samples;
  out.mean = sum / drawn;
  out.cut_bracket = cut_mass / drawn;
  const double half = branching ? std::sqrt(std::log(2.0 / opts.alpha) / (2.0 * drawn)) : 0.0;
  out.ci_lo = std::clamp(out.mean - half, 0.0, 1.0);
  out.ci_hi = std::clamp(out.mean + out.cut_bracket + half, 0.0, 1.0);
  return out;
}

}  // namespace erisk
