#include "erisk/numeric.hpp"

#include <stdexcept>

namespace erisk {

ValueVector solve_values(const ReachGame& rg, const SolverOptions& opts) {
  return solve_game<Rational>(rg.source, rg.factor, opts);
}

Interval erisk_interval(const Interval& u, const RiskParams& rp, std::uint64_t bits) {
  const Interval log_u = log2_enclosure(u, bits);
  Interval log_b = log2_enclosure(rp.base, bits);
  for (std::uint64_t more = 2 * bits; log_b.lo.sign() <= 0; more *= 2) log_b = log2_enclosure(rp.base, more);
  return -(log_u / (Interval::point(rp.gamma) * log_b));
}

ERiskValue utility_to_erisk(const Rational& u, const RiskParams& rp, const Rational& tolerance) {
  if (u.sign() < 0 || u > Rational(1)) throw std::domain_error("utility " + u.str() + " outside [0, 1]");
  if (u.is_zero()) return std::nullopt;
  if (u == Rational(1)) return Interval::point(Rational(0));
  for (std::uint64_t bits = 32;; bits *= 2) {
    const Interval e = erisk_interval(Interval::point(u), rp, bits);
    if (e.width() <= tolerance) return e;
  }
}

ApproxResult approximate_erisk(const Game& g, const RiskParams& rp, const SolverOptions& opts) {
  if (!rp.epsilon) throw std::invalid_argument("approximation needs epsilon");
  const Rational half = *rp.epsilon / Rational(2);
  ApproxResult out;
  out.bounds = compute_boundary_sets(g);
  out.plan = compute_precision_bits(g, rp);
  if (out.bounds.s0_empty()) {
    out.solution.values.assign(g.size(), Rational(0));
    out.solution.max = Strategy{Player::kMax, std::vector<std::size_t>(g.size(), 0)};
    out.solution.min = Strategy{Player::kMin, std::vector<std::size_t>(g.size(), 0)};
    for (std::size_t s = 0; s < g.size(); ++s)
      if (g.owner(s) == Player::kMax && out.bounds.keep[s]) out.solution.max.choice[s] = *out.bounds.keep[s];
    out.utility = Rational(0);
    return out;
  }
  const ReachGame rg = build_rounded_game(g, rp, out.plan, out.bounds);
  out.plan = rg.plan;
  out.solution = solve_values(rg, opts);
  out.utility = out.solution.values[g.initial()];
  const ERiskValue log_part = utility_to_erisk(out.utility, rp, half);
  if (!log_part) return out;
  out.enclosure = Interval{log_part->lo - half, log_part->hi + half};
  if (out.enclosure->lo.sign() < 0) out.enclosure->lo = Rational(0);
  out.estimate = out.enclosure->midpoint();
  return out;
}

}  // namespace erisk
