#ifndef ERISK_EXACT_HPP_
#define ERISK_EXACT_HPP_

#include "erisk/algebra.hpp"
#include "erisk/numeric.hpp"
#include "erisk/qualitative.hpp"
#include "erisk/solver.hpp"

#include <vector>

namespace erisk {

// Field Q(b^(1/q)) for gamma = p/q, normalized.
ExtensionPtr utility_field(const RiskParams& rp);

// b^(-gamma r(s)) per state. Plain rationals whenever the exponent is
// integral, so games with integral gamma * r never touch an extension.
std::vector<AlgebraicNumber> exact_factors(const Game& g, const RiskParams& rp, const ExtensionPtr& ext);

// Exact utilities of a Markov chain. The linear system is verified by
// substituting the solution back; a non-zero residual throws
// std::logic_error.
std::vector<AlgebraicNumber> solve_mc_exact(const Game& m, const RiskParams& rp, const BoundarySets& bounds);

struct ExactResult {
  ExtensionPtr field;
  std::vector<AlgebraicNumber> values;
  Strategy max{Player::kMax, {}};
  Strategy min{Player::kMin, {}};
  bool enumerated = false;

  const AlgebraicNumber& at(std::size_t s) const { return values[s]; }
};

ExactResult optimize_exact(const Game& g, const RiskParams& rp, const BoundarySets& bounds,
                           const SolverOptions& opts = {});

// Enclosure of ERisk for an exact utility u in (0, 1], width <= tolerance;
// nullopt when u = 0.
ERiskValue exact_erisk(const AlgebraicNumber& u, const RiskParams& rp, const Rational& tolerance);

struct ThresholdResult {
  bool holds = false;
  ExactResult solution;
  // Enclosure of log2 b^(-gamma t) at the precision that decided the comparison.
  Interval log2_threshold_utility;
  AlgebraicNumber utility;
};

// Decides ERisk* >= t for the threshold in rp via U* <= b^(-gamma t).
// Throws std::invalid_argument when no threshold is set.
ThresholdResult decide_threshold(const Game& g, const RiskParams& rp, const SolverOptions& opts = {});

}  // namespace erisk

#endif  // ERISK_EXACT_HPP_
