#include "erisk/reduction.hpp"

#include "erisk/algebra.hpp"

#include <algorithm>
#include <stdexcept>

namespace erisk {

namespace {

constexpr std::uint64_t kGuardBits = 64;

std::uint64_t as_u64(const Integer& x, const char* what) {
  if (x < 0 || !x.fits_ulong_p()) throw std::overflow_error(std::string(what) + " out of range");
  return x.get_ui();
}

// Lower bound of ln b, positive for b > 1.
Rational ln_base_lower(const Rational& b) {
  for (std::uint64_t bits = 64;; bits *= 2) {
    const Rational lo = log2_enclosure(b, bits).lo * ln2_enclosure().lo;
    if (lo.sign() > 0) return lo;
  }
}

Rational nearest_dyadic(const Rational& x, std::uint64_t bits) {
  const Rational scale = pow2(static_cast<std::int64_t>(bits));
  return Rational(floor(x * scale + Rational(1, 2))) / scale;
}

// -log2(x) from above.
Rational neg_log2_upper(const Rational& x) { return -log2_enclosure(x, kGuardBits).lo; }

}  // namespace

PrecisionPlan compute_precision_bits(const Game& g, const RiskParams& rp) {
  const auto eps = rp.effective_epsilon();
  if (!eps) throw std::invalid_argument("precision plan needs epsilon");
  if (eps->sign() <= 0) throw std::invalid_argument("epsilon must be positive");
  const Rational gamma = rp.effective_gamma();
  const Integer p = gamma.numerator();
  const std::uint64_t q = as_u64(gamma.denominator(), "gamma denominator");

  PrecisionPlan plan;
  plan.epsilon = *eps;
  plan.states = g.size() + 1;
  plan.z = gamma * (*eps / Rational(2)) / Rational(2 * plan.states);
  plan.p_min = g.min_probability();
  for (const State& st : g.states()) {
    if (st.reward == 0) continue;
    plan.r_max = std::max(plan.r_max, st.reward);
    plan.r_min = plan.r_min == 0 ? st.reward : std::min(plan.r_min, st.reward);
  }
  if (plan.r_max == 0) return plan;

  const Interval log2b = log2_enclosure(rp.base, kGuardBits);
  Rational sum = neg_log2_upper(plan.p_min);
  const Rational big_reward = gamma * Rational(plan.r_max) * log2b.hi;
  Rational leak_lo(0);
  for (std::uint64_t bits = kGuardBits; leak_lo.sign() <= 0; bits *= 2)
    leak_lo = Rational(1) - power_enclosure(rp.base, -(p * plan.r_min), q, bits).hi;
  sum += std::max(big_reward, neg_log2_upper(leak_lo));
  sum += neg_log2_upper(gamma);
  sum += neg_log2_upper(*eps / Rational(2));
  sum += log2_enclosure(Rational(plan.states), kGuardBits).hi;
  sum += neg_log2_upper(ln_base_lower(rp.base));
  plan.bound = sum;
  const Integer n = ceil(sum) + 1;
  plan.bits = n < 1 ? 1 : as_u64(n, "precision bits");
  return plan;
}

Interval ideal_factor(const ReachGame& rg, std::size_t s, std::uint64_t bits) {
  if (rg.exponent[s] == 0) return Interval::point(Rational(1));
  return power_enclosure(rg.base, -rg.exponent[s], rg.gamma_den, bits);
}

ReachGame build_rounded_game(const Game& g, const RiskParams& rp, const PrecisionPlan& plan,
                             const BoundarySets& bounds) {
  const Rational gamma = rp.effective_gamma();
  const ExtensionPtr ext = normalize_extension(rp.base, as_u64(gamma.denominator(), "gamma denominator"));
  const Integer qn = Integer(static_cast<unsigned long>(ext->degree()));

  ReachGame rg{g, g, 0, bounds, {}, rp.base, gamma.numerator(), as_u64(gamma.denominator(), "gamma denominator"),
               {}, {}, plan};
  const std::size_t n = g.size();
  rg.exponent.resize(n);
  rg.factor.assign(n, Rational(1));
  rg.exact.assign(n, true);
  bool needs_rounding = false;
  for (std::size_t s = 0; s < n; ++s) {
    rg.exponent[s] = rg.gamma_num * Integer(static_cast<unsigned long>(g.reward(s)));
    if (rg.exponent[s] == 0) continue;
    if (rg.exponent[s] % qn == 0) {
      rg.factor[s] = pow(ext->base(), as_u64(rg.exponent[s] / qn, "exponent")).inverse();
    } else {
      rg.exact[s] = false;
      needs_rounding = true;
    }
  }

  if (needs_rounding) {
    const Rational w = plan.z * ln_base_lower(rp.base);
    const Rational up = Rational(1) + w;
    const Rational down = up.inverse();
    std::uint64_t bits = std::max<std::uint64_t>(plan.bits, 1);
    for (;;) {
      bool ok = true;
      for (std::size_t s = 0; s < n && ok; ++s) {
        if (rg.exact[s]) continue;
        const Interval f = ideal_factor(rg, s, bits + kGuardBits);
        const Rational fh = nearest_dyadic(f.midpoint(), bits);
        const Rational one(1);
        ok = fh.sign() > 0 && fh < one && f.hi < one && fh / f.lo <= up && fh / f.hi >= down &&
             (one - fh) / (one - f.hi) <= up && (one - fh) / (one - f.lo) >= down;
        if (ok) rg.factor[s] = fh;
      }
      if (ok) break;
      bits *= 2;
    }
    rg.plan.bits = bits;
  }

  std::vector<State> states;
  states.reserve(n + 1);
  std::string sink_id = "sink";
  while (g.find(sink_id)) sink_id = "_" + sink_id;
  rg.sink = n;
  for (std::size_t s = 0; s < n; ++s) {
    State st{g.state(s).id, g.owner(s), 0, {}};
    if (bounds.anchored(s)) {
      st.actions.push_back({"absorb", {{s, Rational(1)}}});
    } else {
      for (const Action& a : g.state(s).actions) {
        Action scaled{a.label, {}};
        for (const Transition& t : a.distribution) scaled.distribution.push_back({t.target, rg.factor[s] * t.probability});
        if (rg.factor[s] != Rational(1)) scaled.distribution.push_back({n, Rational(1) - rg.factor[s]});
        st.actions.push_back(std::move(scaled));
      }
    }
    states.push_back(std::move(st));
  }
  states.push_back(State{sink_id, Player::kMax, 0, {{"absorb", {{n, Rational(1)}}}}});
  rg.rounded = Game(std::move(states), g.initial());
  return rg;
}

Rational dist_upper_bound(const ReachGame& rg) {
  Rational worst(0);
  const Rational one(1);
  for (std::size_t s = 0; s < rg.source.size(); ++s) {
    if (rg.exact[s]) continue;
    const Interval f = ideal_factor(rg, s, rg.plan.bits + 2 * kGuardBits);
    const Rational& fh = rg.factor[s];
    const Rational ratio = std::max({fh / f.lo, f.hi / fh, (one - fh) / (one - f.hi), (one - f.lo) / (one - fh)});
    worst = std::max(worst, ratio - one);
  }
  return worst;
}

Rational slack_lower_bound(const Rational& base, const Rational& z) { return z * ln_base_lower(base); }

}  // namespace erisk
