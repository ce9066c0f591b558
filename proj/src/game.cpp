#include "erisk/game.hpp"

#include <set>
#include <sstream>

namespace erisk {

const char* to_string(Player p) { return p == Player::kMax ? "max" : "min"; }

Game::Game(std::vector<State> states, std::size_t initial)
    : states_(std::move(states)), initial_(initial) {
  if (states_.empty()) throw ValidationError("game has no states");
  if (initial_ >= states_.size()) throw ValidationError("initial state out of range");
  for (std::size_t s = 0; s < states_.size(); ++s) {
    const State& st = states_[s];
    if (st.actions.empty())
      throw ValidationError("state '" + st.id + "': empty action set");
    std::set<std::string> labels;
    for (const Action& a : st.actions) {
      const std::string where = "state '" + st.id + "', action '" + a.label + "'";
      if (!labels.insert(a.label).second)
        throw ValidationError(where + ": duplicate action label");
      if (a.distribution.empty()) throw ValidationError(where + ": empty distribution");
      Rational total(0);
      std::set<std::size_t> targets;
      for (const Transition& t : a.distribution) {
        if (t.target >= states_.size())
          throw ValidationError(where + ": dangling state reference");
        if (!targets.insert(t.target).second)
          throw ValidationError(where + ": duplicate target '" + states_[t.target].id + "'");
        if (t.probability.sign() <= 0)
          throw ValidationError(where + ": non-positive probability " + t.probability.str());
        total += t.probability;
      }
      if (total != Rational(1))
        throw ValidationError(where + ": probabilities sum to " + total.str() + ", not 1");
    }
  }
}

std::optional<std::size_t> Game::find(const std::string& id) const {
  for (std::size_t s = 0; s < states_.size(); ++s)
    if (states_[s].id == id) return s;
  return std::nullopt;
}

bool Game::trivial_for(Player p) const {
  for (const State& st : states_)
    if (st.owner == p && st.actions.size() > 1) return false;
  return true;
}

Rational Game::min_probability() const {
  Rational best(1);
  for (const State& st : states_)
    for (const Action& a : st.actions)
      for (const Transition& t : a.distribution)
        if (t.probability < best) best = t.probability;
  return best;
}

std::optional<Rational> RiskParams::effective_threshold() const {
  if (!threshold) return std::nullopt;
  return *threshold * Rational(reward_scale);
}

std::optional<Rational> RiskParams::effective_epsilon() const {
  if (!epsilon) return std::nullopt;
  return *epsilon * Rational(reward_scale);
}

void RiskParams::validate() const {
  if (base <= Rational(1)) throw ValidationError("params: basis b must exceed 1, got " + base.str());
  if (gamma.sign() <= 0) throw ValidationError("params: gamma must be positive, got " + gamma.str());
  if (epsilon && epsilon->sign() <= 0)
    throw ValidationError("params: epsilon must be positive, got " + epsilon->str());
  if (reward_scale < 1) throw ValidationError("params: reward scale must be positive");
}

std::vector<std::size_t> combine(const Game& g, const Strategy& max, const Strategy& min) {
  std::vector<std::size_t> out(g.size(), 0);
  for (std::size_t s = 0; s < g.size(); ++s) {
    const Strategy& st = g.owner(s) == Player::kMax ? max : min;
    out[s] = s < st.choice.size() ? st.choice[s] : 0;
  }
  return out;
}

void check_strategy(const Game& g, const Strategy& s) {
  if (s.choice.size() != g.size())
    throw std::invalid_argument("strategy covers " + std::to_string(s.choice.size()) +
                                " states, game has " + std::to_string(g.size()));
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.owner(i) == s.owner && s.choice[i] >= g.action_count(i))
      throw std::invalid_argument("strategy picks a missing action at state '" +
                                  g.state(i).id + "'");
  }
}

Game restrict_to(const Game& g, const Strategy& fixed) {
  check_strategy(g, fixed);
  std::vector<State> states = g.states();
  for (std::size_t s = 0; s < states.size(); ++s) {
    if (states[s].owner != fixed.owner) continue;
    Action kept = std::move(states[s].actions[fixed.choice[s]]);
    states[s].actions.clear();
    states[s].actions.push_back(std::move(kept));
  }
  return Game(std::move(states), g.initial());
}

}  // namespace erisk
