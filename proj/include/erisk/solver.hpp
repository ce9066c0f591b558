#ifndef ERISK_SOLVER_HPP_
#define ERISK_SOLVER_HPP_

#include "erisk/game.hpp"
#include "erisk/linsolve.hpp"
#include "erisk/qualitative.hpp"

#include <cstdint>
#include <vector>

namespace erisk {

struct SolverOptions {
  // Largest number of Maximizer MD strategies the enumeration fallback visits.
  std::uint64_t enumeration_limit = std::uint64_t{1} << 16;
  std::size_t max_iterations = 100000;
};

// Utilities per state with optimal MD strategies for both players.
template <typename Scalar>
struct Solution {
  std::vector<Scalar> values;
  Strategy max{Player::kMax, {}};
  Strategy min{Player::kMin, {}};
  std::size_t iterations = 0;
  bool enumerated = false;
};

// Component index per vertex; components are numbered in reverse
// topological order (sinks first).
std::vector<std::size_t> strongly_connected_components(const std::vector<std::vector<std::size_t>>& adj,
                                                       std::size_t* count);

// Utility of every state in the chain induced by `choice`, where each
// state s scales its successor mass by factor[s]. Anchored states (S0 -> 1,
// Sinf -> 0) are absorbing when `bounds` is given. Bottom components made
// of zero-reward states are worth 1; other bottom components 0.
template <typename Scalar>
std::vector<Scalar> evaluate_profile(const Game& g, const std::vector<Scalar>& factor,
                                     const BoundarySets* bounds, const std::vector<std::size_t>& choice) {
  const std::size_t n = g.size();
  std::vector<Scalar> v(n, Scalar(0));
  std::vector<bool> known(n, false);
  if (bounds) {
    for (std::size_t s = 0; s < n; ++s) {
      if (bounds->s0[s]) {
        v[s] = Scalar(1);
        known[s] = true;
      } else if (bounds->sinf[s]) {
        known[s] = true;
      }
    }
  }
  std::vector<std::vector<std::size_t>> adj(n);
  std::vector<bool> leaks(n, false);
  for (std::size_t s = 0; s < n; ++s) {
    if (known[s]) continue;
    for (const Transition& t : g.action(s, choice[s]).distribution) {
      if (known[t.target]) {
        leaks[s] = true;
      } else {
        adj[s].push_back(t.target);
      }
    }
  }
  std::size_t count = 0;
  const std::vector<std::size_t> comp = strongly_connected_components(adj, &count);
  std::vector<bool> bottom(count, true);
  std::vector<bool> zero(count, true);
  std::vector<bool> used(count, false);
  for (std::size_t s = 0; s < n; ++s) {
    if (known[s]) continue;
    used[comp[s]] = true;
    if (leaks[s]) bottom[comp[s]] = false;
    if (g.reward(s) != 0) zero[comp[s]] = false;
    for (std::size_t t : adj[s])
      if (comp[t] != comp[s]) bottom[comp[s]] = false;
  }
  for (std::size_t s = 0; s < n; ++s) {
    if (known[s] || !used[comp[s]] || !bottom[comp[s]]) continue;
    v[s] = zero[comp[s]] ? Scalar(1) : Scalar(0);
    known[s] = true;
  }

  std::vector<std::size_t> transient;
  std::vector<std::size_t> index(n, 0);
  for (std::size_t s = 0; s < n; ++s) {
    if (known[s]) continue;
    index[s] = transient.size();
    transient.push_back(s);
  }
  if (transient.empty()) return v;
  const auto m = static_cast<Eigen::Index>(transient.size());
  Matrix<Scalar> a = Matrix<Scalar>::Identity(m, m);
  Vector<Scalar> rhs = Vector<Scalar>::Constant(m, Scalar(0));
  for (Eigen::Index i = 0; i < m; ++i) {
    const std::size_t s = transient[static_cast<std::size_t>(i)];
    for (const Transition& t : g.action(s, choice[s]).distribution) {
      const Scalar w = factor[s] * Scalar(t.probability);
      if (known[t.target]) {
        if (!is_zero(v[t.target])) rhs(i) += w * v[t.target];
      } else {
        a(i, static_cast<Eigen::Index>(index[t.target])) -= w;
      }
    }
  }
  const Vector<Scalar> x = bareiss_solve<Scalar>(a, rhs);
  for (Eigen::Index i = 0; i < m; ++i) v[transient[static_cast<std::size_t>(i)]] = x(i);
  return v;
}

// Sum over the successors of (s, a) of probability times v.
template <typename Scalar>
Scalar expected_successor(const Game& g, std::size_t s, std::size_t a, const std::vector<Scalar>& v) {
  Scalar acc(0);
  for (const Transition& t : g.action(s, a).distribution)
    if (!is_zero(v[t.target])) acc += Scalar(t.probability) * v[t.target];
  return acc;
}

namespace detail {

// Strict greedy switch for `chooser` (Max lowers utility, Min raises it),
// lowest index among equally good improvements. Returns true if anything
// changed.
template <typename Scalar>
bool improve(const Game& g, Player chooser, const std::vector<Scalar>& v, const std::vector<bool>& frozen,
             std::vector<std::size_t>& choice) {
  bool changed = false;
  for (std::size_t s = 0; s < g.size(); ++s) {
    if (g.owner(s) != chooser || frozen[s] || g.action_count(s) < 2) continue;
    Scalar best = expected_successor(g, s, choice[s], v);
    std::size_t pick = choice[s];
    for (std::size_t a = 0; a < g.action_count(s); ++a) {
      if (a == choice[s]) continue;
      const Scalar val = expected_successor(g, s, a, v);
      const int c = sign(val - best);
      if (chooser == Player::kMax ? c < 0 : c > 0) {
        best = val;
        pick = a;
      }
    }
    if (pick != choice[s]) {
      choice[s] = pick;
      changed = true;
    }
  }
  return changed;
}

template <typename Scalar>
bool same_values(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sign(a[i] - b[i]) != 0) return false;
  return true;
}

}  // namespace detail

// Policy iteration for `chooser` on a game in which the other player has
// no choices.
template <typename Scalar>
Solution<Scalar> solve_one_player(const Game& g, const std::vector<Scalar>& factor, Player chooser,
                                  const SolverOptions& opts = {}) {
  const BoundarySets bounds = compute_boundary_sets(g);
  std::vector<std::size_t> choice(g.size(), 0);
  std::vector<bool> frozen(g.size(), false);
  for (std::size_t s = 0; s < g.size(); ++s) {
    frozen[s] = bounds.anchored(s);
    if (g.owner(s) == chooser && bounds.keep[s]) choice[s] = *bounds.keep[s];
  }
  Solution<Scalar> out;
  for (;;) {
    out.values = evaluate_profile(g, factor, &bounds, choice);
    ++out.iterations;
    if (!detail::improve(g, chooser, out.values, frozen, choice)) break;
    if (out.iterations >= opts.max_iterations)
      throw ResourceLimitError("policy iteration exceeded " + std::to_string(opts.max_iterations) + " rounds");
  }
  out.max = Strategy{Player::kMax, std::vector<std::size_t>(g.size(), 0)};
  out.min = Strategy{Player::kMin, std::vector<std::size_t>(g.size(), 0)};
  for (std::size_t s = 0; s < g.size(); ++s) (g.owner(s) == Player::kMax ? out.max : out.min).choice[s] = choice[s];
  return out;
}

namespace detail {

template <typename Scalar>
Solution<Scalar> enumerate_max(const Game& g, const std::vector<Scalar>& factor, const SolverOptions& opts) {
  std::vector<std::size_t> radix;
  std::vector<std::size_t> states;
  std::uint64_t total = 1;
  for (std::size_t s = 0; s < g.size(); ++s) {
    if (g.owner(s) != Player::kMax || g.action_count(s) < 2) continue;
    states.push_back(s);
    radix.push_back(g.action_count(s));
    total *= g.action_count(s);
    if (total > opts.enumeration_limit)
      throw ResourceLimitError("strategy enumeration exceeds the limit of " +
                               std::to_string(opts.enumeration_limit) + " Maximizer strategies");
  }
  std::vector<std::vector<Scalar>> values;
  std::vector<Strategy> sigmas;
  std::vector<Strategy> taus;
  std::vector<std::size_t> digits(states.size(), 0);
  std::size_t rounds = 0;
  for (std::uint64_t k = 0; k < total; ++k) {
    Strategy sigma{Player::kMax, std::vector<std::size_t>(g.size(), 0)};
    for (std::size_t i = 0; i < states.size(); ++i) sigma.choice[states[i]] = digits[i];
    Solution<Scalar> br = solve_one_player(restrict_to(g, sigma), factor, Player::kMin, opts);
    rounds += br.iterations;
    values.push_back(std::move(br.values));
    sigmas.push_back(std::move(sigma));
    taus.push_back(std::move(br.min));
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (++digits[i] < radix[i]) break;
      digits[i] = 0;
    }
  }
  std::vector<Scalar> best = values[0];
  for (const auto& vals : values)
    for (std::size_t s = 0; s < g.size(); ++s)
      if (sign(vals[s] - best[s]) < 0) best[s] = vals[s];
  std::size_t pick = 0;
  bool uniform = false;
  for (std::size_t k = 0; k < values.size() && !uniform; ++k) {
    if (same_values(values[k], best)) {
      pick = k;
      uniform = true;
    }
  }
  if (!uniform) {
    for (std::size_t k = 0; k < values.size(); ++k)
      if (sign(values[k][g.initial()] - best[g.initial()]) == 0) {
        pick = k;
        break;
      }
  }
  Solution<Scalar> out;
  out.values = std::move(best);
  out.max = sigmas[pick];
  out.min = taus[pick];
  out.iterations = rounds;
  out.enumerated = true;
  return out;
}

}  // namespace detail

// Optimal utilities (Maximizer minimizes, Minimizer maximizes) with MD
// strategies. MDPs and chains use policy iteration; games use strategy
// iteration over the Minimizer with a policy-iteration best response, a
// saddle-point certificate, and exhaustive enumeration over Maximizer
// strategies when the certificate fails.
template <typename Scalar>
Solution<Scalar> solve_game(const Game& g, const std::vector<Scalar>& factor, const SolverOptions& opts = {}) {
  if (g.trivial_for(Player::kMin)) return solve_one_player(g, factor, Player::kMax, opts);
  if (g.trivial_for(Player::kMax)) return solve_one_player(g, factor, Player::kMin, opts);

  const BoundarySets bounds = compute_boundary_sets(g);
  Strategy tau{Player::kMin, std::vector<std::size_t>(g.size(), 0)};
  std::vector<bool> frozen(g.size(), false);
  for (std::size_t s = 0; s < g.size(); ++s) {
    frozen[s] = bounds.anchored(s);
    if (g.owner(s) == Player::kMin && bounds.keep[s]) tau.choice[s] = *bounds.keep[s];
  }
  std::vector<Strategy> seen{tau};
  Solution<Scalar> inner;
  std::size_t rounds = 0;
  bool cycled = false;
  for (;;) {
    inner = solve_one_player(restrict_to(g, tau), factor, Player::kMax, opts);
    rounds += inner.iterations;
    if (!detail::improve(g, Player::kMin, inner.values, frozen, tau.choice)) break;
    bool repeat = false;
    for (const Strategy& old : seen) repeat = repeat || old == tau;
    if (repeat || rounds >= opts.max_iterations) {
      cycled = true;
      break;
    }
    seen.push_back(tau);
  }
  if (!cycled) {
    Strategy sigma{Player::kMax, inner.max.choice};
    const Solution<Scalar> check = solve_one_player(restrict_to(g, sigma), factor, Player::kMin, opts);
    if (detail::same_values(check.values, inner.values)) {
      Solution<Scalar> out;
      out.values = std::move(inner.values);
      out.max = std::move(sigma);
      out.min = tau;
      out.iterations = rounds + check.iterations;
      return out;
    }
  }
  return detail::enumerate_max(g, factor, opts);
}

}  // namespace erisk

#endif  // ERISK_SOLVER_HPP_
