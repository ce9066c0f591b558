#ifndef ERISK_ENCODE_HPP_
#define ERISK_ENCODE_HPP_

#include "erisk/game.hpp"
#include "erisk/qualitative.hpp"

#include <string>

namespace erisk {

struct EncodingStats {
  std::size_t state_variables = 0;
  std::size_t chain_variables = 0;
  std::size_t rank_variables = 0;
};

// SMT-LIB 2 (QF_NRA) document that is satisfiable iff ERisk* >= t for the
// threshold in rp. One real per state, fixpoint inequalities per action by
// owner, a disjunction of equalities per state, and every irrational
// constant b^(-e) defined through repeated-squaring chains. Games that are
// not stopping get additional rank variables forcing the Maximizer's
// witnessing choices to leave zero-reward regions. Throws
// std::invalid_argument without a threshold.
std::string emit_inequalities(const Game& g, const RiskParams& rp, const BoundarySets& bounds,
                              EncodingStats* stats = nullptr);

}  // namespace erisk

#endif  // ERISK_ENCODE_HPP_
