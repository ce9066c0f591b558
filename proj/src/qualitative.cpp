#include "erisk/qualitative.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace erisk {

namespace {

bool support_within(const Action& a, const StateSet& set) {
  return std::all_of(a.distribution.begin(), a.distribution.end(),
                     [&](const Transition& t) { return set[t.target]; });
}

bool support_meets(const Action& a, const StateSet& set) {
  return std::any_of(a.distribution.begin(), a.distribution.end(),
                     [&](const Transition& t) { return set[t.target]; });
}

StateSet positive_reward(const Game& g) {
  StateSet b(g.size());
  for (std::size_t s = 0; s < g.size(); ++s) b[s] = g.reward(s) > 0;
  return b;
}

struct ActionRef {
  std::size_t state;
  std::size_t action;
};

// Positive attractor of `target`, linear in the size of the game.
StateSet positive_attractor(const Game& g, const StateSet& target) {
  std::vector<std::vector<ActionRef>> preds(g.size());
  for (std::size_t s = 0; s < g.size(); ++s)
    for (std::size_t a = 0; a < g.action_count(s); ++a)
      for (const Transition& t : g.action(s, a).distribution) preds[t.target].push_back({s, a});

  StateSet attr = target;
  std::vector<std::vector<bool>> hit(g.size());
  std::vector<std::size_t> missing(g.size());
  std::deque<std::size_t> queue;
  for (std::size_t s = 0; s < g.size(); ++s) {
    hit[s].assign(g.action_count(s), false);
    missing[s] = g.action_count(s);
    if (attr[s]) queue.push_back(s);
  }
  while (!queue.empty()) {
    const std::size_t t = queue.front();
    queue.pop_front();
    for (const ActionRef& p : preds[t]) {
      if (attr[p.state] || hit[p.state][p.action]) continue;
      hit[p.state][p.action] = true;
      if (g.owner(p.state) == Player::kMax || --missing[p.state] == 0) {
        attr[p.state] = true;
        queue.push_back(p.state);
      }
    }
  }
  return attr;
}

}  // namespace

bool BoundarySets::s0_empty() const {
  return std::none_of(s0.begin(), s0.end(), [](bool b) { return b; });
}

StateSet compute_S0(const Game& g) {
  StateSet attr = positive_attractor(g, positive_reward(g));
  attr.flip();
  return attr;
}

namespace {

// Returns the almost-sure Buchi region and, for Maximizer states in it,
// an action that stays inside and makes progress (or stays, on targets).
StateSet almost_sure_buchi(const Game& g, std::vector<std::optional<std::size_t>>* witness) {
  const std::size_t n = g.size();
  const StateSet target = positive_reward(g);
  StateSet outer(n, true);
  std::vector<std::optional<std::size_t>> keep(n);
  for (;;) {
    StateSet inner(n, false);
    std::fill(keep.begin(), keep.end(), std::nullopt);
    for (bool grew = true; grew;) {
      grew = false;
      StateSet next = inner;
      for (std::size_t s = 0; s < n; ++s) {
        if (!outer[s] || inner[s]) continue;
        const bool on_target = target[s];
        std::optional<std::size_t> good;
        bool all_good = true;
        for (std::size_t a = 0; a < g.action_count(s); ++a) {
          const Action& act = g.action(s, a);
          const bool ok = support_within(act, outer) && (on_target || support_meets(act, inner));
          if (ok && !good) good = a;
          all_good = all_good && ok;
        }
        const bool wins = g.owner(s) == Player::kMax ? good.has_value() : all_good;
        if (wins) {
          next[s] = true;
          keep[s] = good;
          grew = true;
        }
      }
      inner = std::move(next);
    }
    if (inner == outer) break;
    outer = std::move(inner);
  }
  if (witness) *witness = std::move(keep);
  return outer;
}

}  // namespace

StateSet compute_Sinf(const Game& g) { return almost_sure_buchi(g, nullptr); }

BoundarySets compute_boundary_sets(const Game& g) {
  BoundarySets out;
  out.s0 = compute_S0(g);
  std::vector<std::optional<std::size_t>> buchi_keep;
  out.sinf = almost_sure_buchi(g, &buchi_keep);
  out.keep.assign(g.size(), std::nullopt);
  for (std::size_t s = 0; s < g.size(); ++s) {
    if (out.s0[s] && g.owner(s) == Player::kMin) {
      for (std::size_t a = 0; a < g.action_count(s); ++a) {
        if (support_within(g.action(s, a), out.s0)) {
          out.keep[s] = a;
          break;
        }
      }
    } else if (out.sinf[s] && g.owner(s) == Player::kMax) {
      out.keep[s] = buchi_keep[s];
    }
  }
  return out;
}

bool check_stopping(const Game& g, const BoundarySets& bounds) {
  const std::size_t n = g.size();
  // Largest set outside the target in which some action keeps the play surely.
  StateSet safe(n);
  for (std::size_t s = 0; s < n; ++s) safe[s] = !bounds.s0[s] && g.reward(s) == 0;
  for (bool shrunk = true; shrunk;) {
    shrunk = false;
    for (std::size_t s = 0; s < n; ++s) {
      if (!safe[s]) continue;
      bool stays = false;
      for (std::size_t a = 0; a < g.action_count(s) && !stays; ++a)
        stays = support_within(g.action(s, a), safe);
      if (!stays) {
        safe[s] = false;
        shrunk = true;
      }
    }
  }
  return std::none_of(safe.begin(), safe.end(), [](bool b) { return b; });
}

bool boundary_invariants_hold(const Game& g, const BoundarySets& bounds) {
  for (std::size_t s = 0; s < g.size(); ++s) {
    if (bounds.s0[s] && bounds.sinf[s]) return false;
    if (!bounds.s0[s]) continue;
    if (g.reward(s) != 0) return false;
    bool any = false;
    bool all = true;
    for (std::size_t a = 0; a < g.action_count(s); ++a) {
      const bool within = support_within(g.action(s, a), bounds.s0);
      any = any || within;
      all = all && within;
    }
    if (g.owner(s) == Player::kMin ? !any : !all) return false;
  }
  return true;
}

}  // namespace erisk
