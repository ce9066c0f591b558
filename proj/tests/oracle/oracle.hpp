#ifndef ERISK_TESTS_ORACLE_HPP_
#define ERISK_TESTS_ORACLE_HPP_

// Brute-force reference implementations. Everything here works directly
// from definitions on the induced Markov chains of all MD profiles and
// shares no solving code with the library.

#include "erisk/algebra.hpp"
#include "erisk/game.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracle {

using erisk::AlgebraicNumber;
using erisk::Game;
using erisk::Player;
using erisk::Rational;

using Profile = std::vector<std::size_t>;
using Graph = std::vector<std::vector<std::size_t>>;

inline Graph induced_graph(const Game& g, const Profile& p) {
  Graph adj(g.size());
  for (std::size_t s = 0; s < g.size(); ++s)
    for (const auto& t : g.action(s, p[s]).distribution) adj[s].push_back(t.target);
  return adj;
}

// reach[s][t]: t reachable from s (reflexive).
inline std::vector<std::vector<bool>> reachability(const Graph& adj) {
  const std::size_t n = adj.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::size_t> stack{s};
    reach[s][s] = true;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v : adj[u])
        if (!reach[s][v]) {
          reach[s][v] = true;
          stack.push_back(v);
        }
    }
  }
  return reach;
}

// s lies in a bottom SCC iff it can return from everywhere it can go.
inline bool in_bottom(const std::vector<std::vector<bool>>& reach, std::size_t s) {
  for (std::size_t t = 0; t < reach.size(); ++t)
    if (reach[s][t] && !reach[t][s]) return false;
  return true;
}

// Choices of one player only; the other player's entries stay 0.
inline std::vector<Profile> player_strategies(const Game& g, Player who) {
  std::vector<Profile> out;
  Profile p(g.size(), 0);
  for (;;) {
    out.push_back(p);
    std::size_t i = 0;
    for (; i < g.size(); ++i) {
      if (g.owner(i) != who) continue;
      if (++p[i] < g.action_count(i)) break;
      p[i] = 0;
    }
    if (i == g.size()) return out;
  }
}

inline Profile merge(const Game& g, const Profile& max, const Profile& min) {
  Profile p(g.size());
  for (std::size_t s = 0; s < g.size(); ++s) p[s] = g.owner(s) == Player::kMax ? max[s] : min[s];
  return p;
}

template <typename Scalar>
int cmp(const Scalar& a, const Scalar& b) {
  return sign(a - b);
}

// Plain Gauss-Jordan with first-non-zero pivoting.
template <typename Scalar>
std::vector<Scalar> gauss_jordan(std::vector<std::vector<Scalar>> a, std::vector<Scalar> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && is_zero(a[piv][c])) ++piv;
    if (piv == n) throw std::runtime_error("oracle: singular system");
    std::swap(a[piv], a[c]);
    std::swap(b[piv], b[c]);
    const Scalar inv = Scalar(1) / a[c][c];
    for (std::size_t j = c; j < n; ++j) a[c][j] = a[c][j] * inv;
    b[c] = b[c] * inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || is_zero(a[r][c])) continue;
      const Scalar m = a[r][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] -= m * a[c][j];
      b[r] -= m * b[c];
    }
  }
  return b;
}

// Utility E[prod factor] of every state under a profile, by definition:
// zero-reward bottom components give 1, other bottom components 0, and the
// transient part solves v = F P v.
template <typename Scalar>
std::vector<Scalar> profile_utility(const Game& g, const std::vector<Scalar>& factor, const Profile& p) {
  const std::size_t n = g.size();
  const auto reach = reachability(induced_graph(g, p));
  std::vector<Scalar> v(n, Scalar(0));
  std::vector<bool> fixed(n, false);
  for (std::size_t s = 0; s < n; ++s) {
    if (!in_bottom(reach, s)) continue;
    bool zero = true;
    for (std::size_t t = 0; t < n; ++t)
      if (reach[s][t] && g.reward(t) != 0) zero = false;
    v[s] = zero ? Scalar(1) : Scalar(0);
    fixed[s] = true;
  }
  std::vector<std::size_t> free;
  std::vector<std::size_t> pos(n, 0);
  for (std::size_t s = 0; s < n; ++s)
    if (!fixed[s]) {
      pos[s] = free.size();
      free.push_back(s);
    }
  if (free.empty()) return v;
  std::vector<std::vector<Scalar>> a(free.size(), std::vector<Scalar>(free.size(), Scalar(0)));
  std::vector<Scalar> b(free.size(), Scalar(0));
  for (std::size_t i = 0; i < free.size(); ++i) {
    const std::size_t s = free[i];
    a[i][i] = Scalar(1);
    for (const auto& t : g.action(s, p[s]).distribution) {
      const Scalar w = factor[s] * Scalar(t.probability);
      if (fixed[t.target]) {
        b[i] += w * v[t.target];
      } else {
        a[i][pos[t.target]] -= w;
      }
    }
  }
  const std::vector<Scalar> x = gauss_jordan(std::move(a), std::move(b));
  for (std::size_t i = 0; i < free.size(); ++i) v[free[i]] = x[i];
  return v;
}

template <typename Scalar>
struct GameValues {
  std::vector<Scalar> maxmin;  // min over Maximizer of max over Minimizer
  std::vector<Scalar> minmax;  // max over Minimizer of min over Maximizer
};

// Maximizer minimizes utility. Both orders of quantification over MD
// strategies, pointwise per state.
template <typename Scalar>
GameValues<Scalar> brute_force_values(const Game& g, const std::vector<Scalar>& factor) {
  const auto maxs = player_strategies(g, Player::kMax);
  const auto mins = player_strategies(g, Player::kMin);
  std::vector<std::vector<std::vector<Scalar>>> table(maxs.size());
  for (std::size_t i = 0; i < maxs.size(); ++i)
    for (std::size_t j = 0; j < mins.size(); ++j) table[i].push_back(profile_utility(g, factor, merge(g, maxs[i], mins[j])));
  const std::size_t n = g.size();
  GameValues<Scalar> out;
  for (std::size_t s = 0; s < n; ++s) {
    Scalar best_outer(0);
    for (std::size_t i = 0; i < maxs.size(); ++i) {
      Scalar inner = table[i][0][s];
      for (std::size_t j = 1; j < mins.size(); ++j)
        if (cmp(table[i][j][s], inner) > 0) inner = table[i][j][s];
      if (i == 0 || cmp(inner, best_outer) < 0) best_outer = inner;
    }
    out.maxmin.push_back(best_outer);
    Scalar best_min(0);
    for (std::size_t j = 0; j < mins.size(); ++j) {
      Scalar inner = table[0][j][s];
      for (std::size_t i = 1; i < maxs.size(); ++i)
        if (cmp(table[i][j][s], inner) < 0) inner = table[i][j][s];
      if (j == 0 || cmp(inner, best_min) > 0) best_min = inner;
    }
    out.minmax.push_back(best_min);
  }
  return out;
}

// b^(-gamma r(s)) built by repeated multiplication with beta^-1.
inline std::vector<AlgebraicNumber> factors(const Game& g, const Rational& b, const Rational& gamma) {
  const auto ext = erisk::normalize_extension(b, gamma.denominator().get_ui());
  AlgebraicNumber beta_inv = ext->degree() == 1 ? AlgebraicNumber(ext->base().inverse())
                                                : erisk::invert(AlgebraicNumber::unit(ext, 1));
  std::vector<AlgebraicNumber> out;
  for (std::size_t s = 0; s < g.size(); ++s) {
    const unsigned long n = gamma.numerator().get_ui() * g.reward(s);
    AlgebraicNumber f(1);
    for (unsigned long k = 0; k < n; ++k) f = f * beta_inv;
    out.push_back(f);
  }
  return out;
}

struct QualitativeAnswer {
  std::vector<bool> s0;
  std::vector<bool> sinf;
  bool stopping = true;
};

// S0: for every Maximizer strategy some Minimizer strategy avoids positive
// reward surely. Sinf: some Maximizer strategy makes X infinite almost
// surely against all Minimizer strategies. Stopping: every profile reaches
// S0 or positive reward with positive probability from every state.
inline QualitativeAnswer qualitative(const Game& g) {
  const auto maxs = player_strategies(g, Player::kMax);
  const auto mins = player_strategies(g, Player::kMin);
  const std::size_t n = g.size();
  std::vector<std::vector<std::vector<bool>>> reach;
  std::vector<std::vector<bool>> no_positive;
  std::vector<std::vector<bool>> infinite;
  for (const auto& sigma : maxs)
    for (const auto& tau : mins) {
      auto r = reachability(induced_graph(g, merge(g, sigma, tau)));
      std::vector<bool> positive_bottom(n, false);
      std::vector<bool> bottom(n, false);
      for (std::size_t t = 0; t < n; ++t) {
        bottom[t] = in_bottom(r, t);
        for (std::size_t u = 0; u < n; ++u)
          if (r[t][u] && g.reward(u) > 0) positive_bottom[t] = true;
      }
      std::vector<bool> np(n, true);
      std::vector<bool> inf(n, true);
      for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < n; ++t) {
          if (!r[s][t]) continue;
          if (g.reward(t) > 0) np[s] = false;
          if (bottom[t] && !positive_bottom[t]) inf[s] = false;
        }
      reach.push_back(std::move(r));
      no_positive.push_back(std::move(np));
      infinite.push_back(std::move(inf));
    }
  QualitativeAnswer out;
  out.s0.assign(n, true);
  out.sinf.assign(n, false);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t i = 0; i < maxs.size(); ++i) {
      bool some = false;
      bool all = true;
      for (std::size_t j = 0; j < mins.size(); ++j) {
        some = some || no_positive[i * mins.size() + j][s];
        all = all && infinite[i * mins.size() + j][s];
      }
      if (!some) out.s0[s] = false;
      if (all) out.sinf[s] = true;
    }
  for (const auto& r : reach)
    for (std::size_t s = 0; s < n && out.stopping; ++s) {
      bool hits = false;
      for (std::size_t t = 0; t < n; ++t)
        if (r[s][t] && (out.s0[t] || g.reward(t) > 0)) hits = true;
      out.stopping = hits;
    }
  return out;
}

// max over Maximizer, min over Minimizer of P[reach target], by enumeration.
inline std::vector<Rational> reachability_value(const Game& g, const std::vector<bool>& target) {
  const auto maxs = player_strategies(g, Player::kMax);
  const auto mins = player_strategies(g, Player::kMin);
  const std::size_t n = g.size();
  std::vector<Rational> best(n, Rational(0));
  for (std::size_t i = 0; i < maxs.size(); ++i) {
    std::vector<Rational> worst(n, Rational(1));
    for (const auto& tau : mins) {
      const Profile p = merge(g, maxs[i], tau);
      const auto reach = reachability(induced_graph(g, p));
      std::vector<Rational> v(n, Rational(0));
      std::vector<std::size_t> free;
      std::vector<std::size_t> pos(n, 0);
      for (std::size_t s = 0; s < n; ++s) {
        bool can = false;
        for (std::size_t t = 0; t < n; ++t) can = can || (reach[s][t] && target[t]);
        if (target[s]) {
          v[s] = Rational(1);
        } else if (can) {
          pos[s] = free.size();
          free.push_back(s);
        }
      }
      if (!free.empty()) {
        std::vector<std::vector<Rational>> a(free.size(), std::vector<Rational>(free.size(), Rational(0)));
        std::vector<Rational> b(free.size(), Rational(0));
        for (std::size_t k = 0; k < free.size(); ++k) {
          const std::size_t s = free[k];
          a[k][k] = Rational(1);
          for (const auto& t : g.action(s, p[s]).distribution) {
            if (target[t.target]) {
              b[k] += t.probability;
            } else if (v[t.target].is_zero() && std::find(free.begin(), free.end(), t.target) != free.end()) {
              a[k][pos[t.target]] -= t.probability;
            }
          }
        }
        const auto x = gauss_jordan(std::move(a), std::move(b));
        for (std::size_t k = 0; k < free.size(); ++k) v[free[k]] = x[k];
      }
      for (std::size_t s = 0; s < n; ++s)
        if (v[s] < worst[s]) worst[s] = v[s];
    }
    for (std::size_t s = 0; s < n; ++s)
      if (i == 0 || worst[s] > best[s]) best[s] = worst[s];
  }
  return best;
}

struct RandomGameSpec {
  std::size_t min_states = 1;
  std::size_t max_states = 5;
  std::size_t max_actions = 2;
  std::uint64_t max_reward = 2;
  bool allow_min = true;
  bool allow_max = true;
  bool single_action = false;
};

// Random game with small-denominator probabilities.
inline Game random_game(std::mt19937_64& rng, const RandomGameSpec& spec) {
  auto uniform = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
  const std::size_t n = uniform(spec.min_states, spec.max_states);
  std::vector<erisk::State> states(n);
  for (std::size_t s = 0; s < n; ++s) {
    states[s].id = "q" + std::to_string(s);
    if (spec.allow_max && spec.allow_min) {
      states[s].owner = uniform(0, 1) ? Player::kMax : Player::kMin;
    } else {
      states[s].owner = spec.allow_min ? Player::kMin : Player::kMax;
    }
    states[s].reward = uniform(0, 2) == 0 ? 0 : uniform(0, spec.max_reward);
    const std::size_t actions = spec.single_action ? 1 : uniform(1, spec.max_actions);
    for (std::size_t a = 0; a < actions; ++a) {
      erisk::Action act{"a" + std::to_string(a), {}};
      std::vector<std::size_t> targets;
      const std::size_t k = uniform(1, std::min<std::size_t>(3, n));
      while (targets.size() < k) {
        const std::size_t t = uniform(0, n - 1);
        if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
      }
      const long den = static_cast<long>(uniform(k, 6));
      std::vector<long> weights(k, 1);
      for (long extra = den - static_cast<long>(k); extra > 0; --extra) ++weights[uniform(0, k - 1)];
      for (std::size_t i = 0; i < k; ++i) act.distribution.push_back({targets[i], Rational(weights[i]) / Rational(den)});
      states[s].actions.push_back(std::move(act));
    }
  }
  return Game(std::move(states), 0);
}

}  // namespace oracle

#endif  // ERISK_TESTS_ORACLE_HPP_
