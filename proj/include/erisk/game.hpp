#ifndef ERISK_GAME_HPP_
#define ERISK_GAME_HPP_

#include "erisk/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace erisk {

// Maximizer maximizes entropic risk, i.e. minimizes utility.
enum class Player { kMax, kMin };

const char* to_string(Player p);

// Raised for malformed game descriptions; the message names the location.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an exponential fallback would exceed its configured budget.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Transition {
  std::size_t target;
  Rational probability;
};

struct Action {
  std::string label;
  std::vector<Transition> distribution;
};

struct State {
  std::string id;
  Player owner = Player::kMax;
  std::uint64_t reward = 0;
  std::vector<Action> actions;
};

// Turn-based stochastic game with natural-number state rewards. Immutable
// after construction; the constructor enforces all structural invariants.
class Game {
 public:
  Game(std::vector<State> states, std::size_t initial);

  std::size_t size() const { return states_.size(); }
  std::size_t initial() const { return initial_; }

  const State& state(std::size_t s) const { return states_[s]; }
  const std::vector<State>& states() const { return states_; }
  Player owner(std::size_t s) const { return states_[s].owner; }
  std::uint64_t reward(std::size_t s) const { return states_[s].reward; }
  std::size_t action_count(std::size_t s) const { return states_[s].actions.size(); }
  const Action& action(std::size_t s, std::size_t a) const { return states_[s].actions[a]; }

  std::optional<std::size_t> find(const std::string& id) const;

  // True when no state of `p` has a choice.
  bool trivial_for(Player p) const;
  bool is_markov_chain() const { return trivial_for(Player::kMax) && trivial_for(Player::kMin); }

  // Smallest positive transition probability.
  Rational min_probability() const;

 private:
  std::vector<State> states_;
  std::size_t initial_;
};

// Risk parameters as supplied by the user plus the reward scale D applied
// when rational rewards were turned into integers. The effective values
// are what every solver consumes.
struct RiskParams {
  Rational base{2};
  Rational gamma{1};
  std::optional<Rational> threshold;
  std::optional<Rational> epsilon;
  Integer reward_scale{1};

  Rational effective_gamma() const { return gamma / Rational(reward_scale); }
  std::optional<Rational> effective_threshold() const;
  std::optional<Rational> effective_epsilon() const;

  // Throws ValidationError unless b > 1, gamma > 0 and epsilon > 0.
  void validate() const;
};

// Memoryless deterministic strategy of one player: one action index per
// state. Entries for states of the other player are ignored (kept at 0).
struct Strategy {
  Player owner = Player::kMax;
  std::vector<std::size_t> choice;

  friend bool operator==(const Strategy&, const Strategy&) = default;
};

// Per-state action under the combined profile.
std::vector<std::size_t> combine(const Game& g, const Strategy& max, const Strategy& min);

// Throws std::invalid_argument unless every covered choice is in range.
void check_strategy(const Game& g, const Strategy& s);

// Copy of g in which every state of `fixed.owner` keeps only the chosen
// action (relabelled to index 0).
Game restrict_to(const Game& g, const Strategy& fixed);

}  // namespace erisk

#endif  // ERISK_GAME_HPP_
