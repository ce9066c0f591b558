#include "erisk/enclosure.hpp"

#include <algorithm>
#include <stdexcept>

namespace erisk {

Interval operator+(const Interval& a, const Interval& b) {
  return {a.lo + b.lo, a.hi + b.hi};
}

Interval operator-(const Interval& a, const Interval& b) {
  return {a.lo - b.hi, a.hi - b.lo};
}

Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

Interval operator*(const Interval& a, const Interval& b) {
  const Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.lo.sign() <= 0 && b.hi.sign() >= 0)
    throw std::domain_error("interval division by an interval containing 0");
  return a * Interval{b.hi.inverse(), b.lo.inverse()};
}

Integer floor_root(const Integer& x, std::uint64_t k) {
  if (x < 0) throw std::domain_error("root of a negative integer");
  if (k == 0) throw std::domain_error("zeroth root");
  Integer r;
  mpz_root(r.get_mpz_t(), x.get_mpz_t(), k);
  return r;
}

Interval root_enclosure(const Rational& x, std::uint64_t k, std::uint64_t bits) {
  if (x.sign() <= 0) throw std::domain_error("root_enclosure needs x > 0");
  if (k == 1) return Interval::point(x);
  // x^(1/k) = (n * d^(k-1))^(1/k) / d, scaled by 2^bits.
  const Integer n = x.numerator();
  const Integer d = x.denominator();
  Integer dk1;
  mpz_pow_ui(dk1.get_mpz_t(), d.get_mpz_t(), k - 1);
  Integer scaled = n * dk1;
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), bits * k);
  Integer r;
  const bool exact = mpz_root(r.get_mpz_t(), scaled.get_mpz_t(), k) != 0;
  Integer denom = d;
  mpz_mul_2exp(denom.get_mpz_t(), denom.get_mpz_t(), bits);
  const Rational lo(r, denom);
  if (exact) return Interval::point(lo);
  return {lo, Rational(r + 1, denom)};
}

Interval power_enclosure(const Rational& base, const Integer& num,
                         std::uint64_t den, std::uint64_t bits) {
  if (base.sign() <= 0) throw std::domain_error("power_enclosure needs base > 0");
  if (den == 0) throw std::domain_error("power_enclosure needs den >= 1");
  const Rational b = num < 0 ? base.inverse() : base;
  const Integer e = num < 0 ? Integer(-num) : num;
  if (!e.fits_ulong_p()) throw std::overflow_error("exponent too large");
  const Rational radicand = pow(b, e.get_ui());
  // Relative accuracy: scale the absolute precision by the magnitude.
  const std::int64_t mag =
      static_cast<std::int64_t>(bit_length(radicand.denominator())) / static_cast<std::int64_t>(den) + 2;
  return root_enclosure(radicand, den, bits + static_cast<std::uint64_t>(std::max<std::int64_t>(mag, 0)));
}

namespace {

// Truncates a positive rational to a dyadic with `prec` fractional bits.
Rational round_dyadic(const Rational& x, std::uint64_t prec, Rounding r) {
  Integer scaled = x.numerator();
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), prec);
  Integer q;
  if (r == Rounding::kDown) {
    mpz_fdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), x.denominator().get_mpz_t());
  } else {
    mpz_cdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), x.denominator().get_mpz_t());
  }
  Integer den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), prec);
  return Rational(q, den);
}

// Bits of log2(y) for y in [1, 2) using a squaring track rounded in one
// direction. Returns sum b_i 2^-i over `count` bits.
Rational log2_mantissa_track(Rational y, std::uint64_t count, std::uint64_t prec,
                             Rounding r) {
  const Rational two(2);
  Rational acc(0);
  Rational weight(1);
  for (std::uint64_t i = 0; i < count; ++i) {
    y = round_dyadic(y * y, prec, r);
    weight /= two;
    if (y >= two) {
      y /= two;
      acc += weight;
    }
  }
  return acc;
}

}  // namespace

Interval log2_enclosure(const Rational& x, std::uint64_t bits) {
  if (x.sign() <= 0) throw std::domain_error("log2 of a non-positive number");
  // x = 2^e * y, y in [1, 2).
  std::int64_t e = static_cast<std::int64_t>(bit_length(x.numerator())) -
                   static_cast<std::int64_t>(bit_length(x.denominator()));
  Rational y = x / pow2(e);
  if (y < Rational(1)) {
    y *= Rational(2);
    --e;
  }
  const Rational base(static_cast<long>(e));
  if (y == Rational(1)) return Interval::point(base);
  for (std::uint64_t extra = 16;; extra *= 2) {
    const std::uint64_t count = bits + 2;
    const std::uint64_t prec = count + extra;
    const Rational lo = log2_mantissa_track(round_dyadic(y, prec, Rounding::kDown),
                                            count, prec, Rounding::kDown);
    const Rational hi = log2_mantissa_track(round_dyadic(y, prec, Rounding::kUp),
                                            count, prec, Rounding::kUp) +
                        pow2(-static_cast<std::int64_t>(count));
    Interval out{base + lo, base + hi};
    if (out.width() <= pow2(-static_cast<std::int64_t>(bits))) return out;
  }
}

Interval log2_enclosure(const Interval& x, std::uint64_t bits) {
  return {log2_enclosure(x.lo, bits).lo, log2_enclosure(x.hi, bits).hi};
}

Interval ln2_enclosure() {
  // ln 2 = 0.69314718055994530941723...
  static const Interval kLn2{Rational::parse("69314718055994530941/100000000000000000000"),
                             Rational::parse("69314718055994530942/100000000000000000000")};
  return kLn2;
}

Integer floor(const Rational& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.numerator().get_mpz_t(), x.denominator().get_mpz_t());
  return q;
}

Integer ceil(const Rational& x) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), x.numerator().get_mpz_t(), x.denominator().get_mpz_t());
  return q;
}

std::string to_decimal(const Rational& x, int digits, Rounding r) {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  const Rational scaled = x * Rational(scale);
  const Integer q = r == Rounding::kDown ? floor(scaled) : ceil(scaled);
  const bool negative = q < 0;
  std::string s = Integer(negative ? Integer(-q) : q).get_str();
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits))
      s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  }
  return negative ? "-" + s : s;
}

}  // namespace erisk
