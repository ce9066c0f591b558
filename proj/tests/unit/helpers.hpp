#ifndef ERISK_TESTS_HELPERS_HPP_
#define ERISK_TESTS_HELPERS_HPP_

#include "erisk/game.hpp"
#include "erisk/io.hpp"

#include <string>
#include <utility>
#include <vector>

namespace testing {

using erisk::Game;
using erisk::Player;
using erisk::Rational;

inline std::string data(const std::string& name) { return std::string(ERISK_TEST_DATA) + "/" + name; }

inline erisk::ParsedInstance running_example() { return erisk::load_instance(data("running_example.json")); }

struct Edge {
  std::size_t target;
  Rational p;
};

// Compact builder: add states in order, then actions.
class Builder {
 public:
  std::size_t state(Player owner, std::uint64_t reward) {
    erisk::State st;
    st.id = "s" + std::to_string(states_.size());
    st.owner = owner;
    st.reward = reward;
    states_.push_back(std::move(st));
    return states_.size() - 1;
  }
  Builder& action(std::size_t s, std::vector<Edge> edges) {
    erisk::Action a{"a" + std::to_string(states_[s].actions.size()), {}};
    for (const Edge& e : edges) a.distribution.push_back({e.target, e.p});
    states_[s].actions.push_back(std::move(a));
    return *this;
  }
  Builder& loop(std::size_t s) { return action(s, {{s, Rational(1)}}); }
  Game build(std::size_t initial = 0) const { return Game(states_, initial); }

 private:
  std::vector<erisk::State> states_;
};

inline erisk::RiskParams params(const Rational& b, const Rational& gamma) {
  erisk::RiskParams rp;
  rp.base = b;
  rp.gamma = gamma;
  return rp;
}

// start -> {zero, one} w.p. 1/2 each; both end in an absorbing zero-reward state.
inline Game two_outcome() {
  Builder g;
  const auto start = g.state(Player::kMax, 0);
  const auto zero = g.state(Player::kMax, 0);
  const auto one = g.state(Player::kMax, 1);
  const auto done = g.state(Player::kMax, 0);
  g.action(start, {{zero, Rational(1, 2)}, {one, Rational(1, 2)}});
  g.action(zero, {{done, Rational(1)}});
  g.action(one, {{done, Rational(1)}});
  g.loop(done);
  return g.build();
}

}  // namespace testing

#endif  // ERISK_TESTS_HELPERS_HPP_
