#include "erisk/exact.hpp"

#include <stdexcept>

namespace erisk {

namespace {

std::uint64_t gamma_den(const RiskParams& rp) {
  const Integer q = rp.effective_gamma().denominator();
  if (!q.fits_ulong_p()) throw std::overflow_error("gamma denominator out of range");
  return q.get_ui();
}

AlgebraicNumber power(AlgebraicNumber x, std::uint64_t n) {
  AlgebraicNumber acc(Rational(1));
  for (; n; n >>= 1) {
    if (n & 1) acc = multiply(acc, x);
    if (n > 1) x = multiply(x, x);
  }
  return acc;
}

Rational pow_ratio(const Rational& base, const Integer& n) {
  const Integer m = n < 0 ? Integer(-n) : n;
  if (!m.fits_ulong_p()) throw std::overflow_error("exponent out of range");
  const Rational p = pow(base, m.get_ui());
  return n < 0 ? p.inverse() : p;
}

}  // namespace

ExtensionPtr utility_field(const RiskParams& rp) { return normalize_extension(rp.base, gamma_den(rp)); }

std::vector<AlgebraicNumber> exact_factors(const Game& g, const RiskParams& rp, const ExtensionPtr& ext) {
  const Integer p = rp.effective_gamma().numerator();
  const Integer q = Integer(static_cast<unsigned long>(ext->degree()));
  std::vector<AlgebraicNumber> out;
  out.reserve(g.size());
  for (std::size_t s = 0; s < g.size(); ++s) {
    const Integer n = p * Integer(static_cast<unsigned long>(g.reward(s)));
    AlgebraicNumber f = represent_power(Rational(1), n, ext);
    if (n % q == 0) f = AlgebraicNumber(f.coordinate(0));
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<AlgebraicNumber> solve_mc_exact(const Game& m, const RiskParams& rp, const BoundarySets& bounds) {
  if (!m.is_markov_chain()) throw std::invalid_argument("solve_mc_exact needs singleton action sets");
  const std::vector<AlgebraicNumber> f = exact_factors(m, rp, utility_field(rp));
  const std::vector<std::size_t> choice(m.size(), 0);
  std::vector<AlgebraicNumber> v = evaluate_profile(m, f, &bounds, choice);
  for (std::size_t s = 0; s < m.size(); ++s) {
    if (bounds.anchored(s)) continue;
    // Fixpoint residual; zero-reward bottom components satisfy it with v = 1.
    const AlgebraicNumber residual = v[s] - f[s] * expected_successor(m, s, 0, v);
    if (!residual.is_zero()) throw std::logic_error("exact solve left a non-zero residual at '" + m.state(s).id + "'");
  }
  return v;
}

ExactResult optimize_exact(const Game& g, const RiskParams& rp, const BoundarySets& bounds, const SolverOptions& opts) {
  ExactResult out;
  out.field = utility_field(rp);
  if (g.is_markov_chain()) {
    out.values = solve_mc_exact(g, rp, bounds);
    out.max = Strategy{Player::kMax, std::vector<std::size_t>(g.size(), 0)};
    out.min = Strategy{Player::kMin, std::vector<std::size_t>(g.size(), 0)};
    return out;
  }
  Solution<AlgebraicNumber> sol = solve_game<AlgebraicNumber>(g, exact_factors(g, rp, out.field), opts);
  out.values = std::move(sol.values);
  out.max = std::move(sol.max);
  out.min = std::move(sol.min);
  out.enumerated = sol.enumerated;
  return out;
}

ERiskValue exact_erisk(const AlgebraicNumber& u, const RiskParams& rp, const Rational& tolerance) {
  const int sg = sign_of(u);
  if (sg < 0) throw std::domain_error("negative utility");
  if (sg == 0) return std::nullopt;
  if (u.is_rational()) return utility_to_erisk(u.coordinate(0), rp, tolerance);
  for (std::uint64_t bits = 64;; bits *= 2) {
    const Interval ui = u.enclose(bits);
    if (ui.lo.sign() <= 0) continue;
    const Interval clipped{ui.lo, ui.hi > Rational(1) ? Rational(1) : ui.hi};
    const Interval e = erisk_interval(clipped, rp, bits);
    if (e.width() <= tolerance) return e;
  }
}

ThresholdResult decide_threshold(const Game& g, const RiskParams& rp, const SolverOptions& opts) {
  if (!rp.threshold) throw std::invalid_argument("threshold decision needs a threshold t");
  ThresholdResult out;
  out.solution = optimize_exact(g, rp, compute_boundary_sets(g), opts);
  out.utility = out.solution.values[g.initial()];
  // gamma * t is invariant under reward scaling.
  const Rational gt = rp.gamma * *rp.threshold;
  if (gt.sign() <= 0 || out.utility.is_zero()) {
    out.holds = true;
    out.log2_threshold_utility = Interval::point(Rational(0));
    if (gt.sign() != 0) out.log2_threshold_utility = Interval::point(-gt) * log2_enclosure(rp.base, 64);
    return out;
  }
  // U <= b^(-gt) compared as log2 U <= -gt log2 b.
  bool equality_checked = false;
  for (std::uint64_t bits = 64;; bits *= 2) {
    const Interval t = Interval::point(-gt) * log2_enclosure(rp.base, bits);
    out.log2_threshold_utility = t;
    const Interval u = out.utility.enclose(bits);
    if (u.lo.sign() > 0) {
      const Interval lu = log2_enclosure(u, bits);
      if (lu.hi < t.lo) {
        out.holds = true;
        return out;
      }
      if (t.hi < lu.lo) {
        out.holds = false;
        return out;
      }
    }
    if (bits >= 256 && !equality_checked) {
      // Both sides are positive, so U = b^(-p/r) iff U^r = b^(-p).
      equality_checked = true;
      if (!gt.denominator().fits_ulong_p()) throw std::overflow_error("threshold denominator out of range");
      const Rational rhs = pow_ratio(rp.base, -gt.numerator());
      if (power(out.utility, gt.denominator().get_ui()) == AlgebraicNumber(rhs)) {
        out.holds = true;
        return out;
      }
    }
  }
}

}  // namespace erisk
