#ifndef ERISK_SIM_HPP_
#define ERISK_SIM_HPP_

#include "erisk/game.hpp"

#include <cstdint>

namespace erisk {

struct SimOptions {
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  // Trajectories whose weight drops below the floor are cut and contribute
  // anywhere in [0, weight].
  double floor = 0x1p-64;
  std::uint64_t max_steps = 1000000;
  // Two-sided miss probability of the confidence interval.
  double alpha = 0.01;
  unsigned threads = 1;
};

struct SimEstimate {
  double mean = 0;
  // Hoeffding interval for the utility, widened by the cut bracket and
  // clipped to [0, 1].
  double ci_lo = 0;
  double ci_hi = 0;
  // Mean extra mass that cut trajectories may contribute.
  double cut_bracket = 0;
  std::uint64_t samples = 0;
  std::uint64_t cut = 0;
};

// Monte Carlo estimate of E[b^(-gamma X)] under the MD profile (max, min).
// Trajectories end in bottom components of the induced chain: weight kept
// when the component has zero reward, weight 0 otherwise. Batches are
// seeded independently of the thread count, so results depend only on the
// seed. Throws std::invalid_argument for malformed profiles.
SimEstimate estimate_utility(const Game& g, const RiskParams& rp, const Strategy& max, const Strategy& min,
                             const SimOptions& opts = {});

}  // namespace erisk

#endif  // ERISK_SIM_HPP_
