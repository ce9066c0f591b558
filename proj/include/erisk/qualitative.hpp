#ifndef ERISK_QUALITATIVE_HPP_
#define ERISK_QUALITATIVE_HPP_

#include "erisk/game.hpp"

#include <optional>
#include <vector>

namespace erisk {

using StateSet = std::vector<bool>;

// S0: Maximizer cannot collect positive reward with positive probability.
// Sinf: Maximizer forces infinitely many positive rewards almost surely.
// `keep` holds, for Minimizer states of S0 and Maximizer states of Sinf,
// an action that realizes the respective condition (MD witness).
struct BoundarySets {
  StateSet s0;
  StateSet sinf;
  std::vector<std::optional<std::size_t>> keep;

  bool in_s0(std::size_t s) const { return s0[s]; }
  bool in_sinf(std::size_t s) const { return sinf[s]; }
  bool anchored(std::size_t s) const { return s0[s] || sinf[s]; }
  bool s0_empty() const;
};

// Complement of the positive attractor of {r > 0}: Maximizer states and
// probabilistic branches existential, Minimizer states universal.
StateSet compute_S0(const Game& g);

// Almost-sure Buchi region for target {r > 0}, nu Y. mu X. (B cap CPre(Y))
// cup APre(Y, X).
StateSet compute_Sinf(const Game& g);

BoundarySets compute_boundary_sets(const Game& g);

// True iff no profile can stay forever outside S0 cup {r > 0}.
bool check_stopping(const Game& g, const BoundarySets& bounds);

// Closure and disjointness invariants of BoundarySets.
bool boundary_invariants_hold(const Game& g, const BoundarySets& bounds);

}  // namespace erisk

#endif  // ERISK_QUALITATIVE_HPP_
