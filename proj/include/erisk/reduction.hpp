#ifndef ERISK_REDUCTION_HPP_
#define ERISK_REDUCTION_HPP_

#include "erisk/enclosure.hpp"
#include "erisk/game.hpp"
#include "erisk/qualitative.hpp"

#include <cstdint>
#include <vector>

namespace erisk {

// Rounding budget for the reachability reduction. The rounding may cost
// at most epsilon / 2 of entropic risk; z is the per-transition relative
// slack, b^-z <= rounded / ideal <= b^z.
struct PrecisionPlan {
  Rational epsilon;
  Rational z;
  std::uint64_t bits = 0;
  // Upper bound of the bit-size formula evaluated at epsilon / 2.
  Rational bound;
  std::size_t states = 0;  // N, including the sink
  Rational p_min;
  std::uint64_t r_min = 0;  // smallest positive reward
  std::uint64_t r_max = 0;
};

// Throws std::invalid_argument when epsilon is absent or not positive.
PrecisionPlan compute_precision_bits(const Game& g, const RiskParams& rp);

// Reachability game: every state s keeps its transitions scaled by
// factor[s] ~ b^(-gamma r(s)) and leaks 1 - factor[s] into an absorbing
// sink; Maximizer minimizes the probability of reaching S0.
struct ReachGame {
  Game source;
  // G_approx as a game: S0 and Sinf absorbing, sink appended last.
  Game rounded;
  std::size_t sink = 0;
  BoundarySets bounds;
  // n_s = p * r(s): the ideal factor is b^(-n_s / q) with gamma = p/q.
  std::vector<Integer> exponent;
  Rational base;
  Integer gamma_num;
  std::uint64_t gamma_den = 1;
  // f_s used in the rounded game; exact when the ideal factor is rational.
  std::vector<Rational> factor;
  std::vector<bool> exact;
  PrecisionPlan plan;
};

ReachGame build_rounded_game(const Game& g, const RiskParams& rp, const PrecisionPlan& plan,
                             const BoundarySets& bounds);

// Enclosure of the ideal factor b^(-gamma r(s)).
Interval ideal_factor(const ReachGame& rg, std::size_t s, std::uint64_t bits);

// Certified upper bound on dist_R(G_R, G_approx): the largest ratio between
// corresponding ideal and rounded transition probabilities, minus 1.
Rational dist_upper_bound(const ReachGame& rg);

// Certified lower bound on b^z - 1.
Rational slack_lower_bound(const Rational& base, const Rational& z);

}  // namespace erisk

#endif  // ERISK_REDUCTION_HPP_
