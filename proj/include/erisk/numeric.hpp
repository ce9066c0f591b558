#ifndef ERISK_NUMERIC_HPP_
#define ERISK_NUMERIC_HPP_

#include "erisk/enclosure.hpp"
#include "erisk/reduction.hpp"
#include "erisk/solver.hpp"

#include <optional>

namespace erisk {

using ValueVector = Solution<Rational>;

// Exact optimal values of the rounded reachability game (probability of
// reaching S0, Maximizer minimizing) for the source states.
ValueVector solve_values(const ReachGame& rg, const SolverOptions& opts = {});

// Entropic risk -(1/gamma) log_b(u); nullopt stands for +infinity (u = 0).
using ERiskValue = std::optional<Interval>;

// Enclosure of the entropic risk for utilities in u, which must lie in (0, 1].
Interval erisk_interval(const Interval& u, const RiskParams& rp, std::uint64_t bits);

// Enclosure of width at most `tolerance`. Throws std::domain_error unless
// 0 <= u <= 1.
ERiskValue utility_to_erisk(const Rational& u, const RiskParams& rp, const Rational& tolerance);

struct ApproxResult {
  // Certified enclosure of ERisk*; nullopt when ERisk* is infinite.
  ERiskValue enclosure;
  // Midpoint of the enclosure, within epsilon of ERisk*.
  Rational estimate;
  // Utility of the initial state in the rounded game.
  Rational utility;
  BoundarySets bounds;
  PrecisionPlan plan;
  ValueVector solution;
};

// Approximates ERisk* to absolute error epsilon (from rp): half the budget
// goes to rounding the reachability game, half to the logarithm.
ApproxResult approximate_erisk(const Game& g, const RiskParams& rp, const SolverOptions& opts = {});

}  // namespace erisk

#endif  // ERISK_NUMERIC_HPP_
