#ifndef ERISK_ENCLOSURE_HPP_
#define ERISK_ENCLOSURE_HPP_

#include "erisk/rational.hpp"

#include <cstdint>
#include <string>

namespace erisk {

// Closed rational interval [lo, hi] certified to contain a real quantity.
struct Interval {
  Rational lo;
  Rational hi;

  static Interval point(const Rational& x) { return {x, x}; }

  Rational width() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / Rational(2); }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool is_point() const { return lo == hi; }
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
Interval operator*(const Interval& a, const Interval& b);
// Requires 0 outside b.
Interval operator/(const Interval& a, const Interval& b);

// floor(x^(1/k)) for x >= 0.
Integer floor_root(const Integer& x, std::uint64_t k);

// Enclosure of x^(1/k), x > 0, of width at most 2^-bits (a point when the
// root is rational at that scale).
Interval root_enclosure(const Rational& x, std::uint64_t k, std::uint64_t bits);

// Enclosure of base^(num/den) for base > 0, den >= 1, with relative
// accuracy controlled by bits.
Interval power_enclosure(const Rational& base, const Integer& num,
                         std::uint64_t den, std::uint64_t bits);

// Enclosure of log2(x), x > 0, of width at most 2^-bits.
Interval log2_enclosure(const Rational& x, std::uint64_t bits);

// Enclosure of log2 over an interval of positive reals (monotone).
Interval log2_enclosure(const Interval& x, std::uint64_t bits);

// Certified enclosure of ln 2.
Interval ln2_enclosure();

enum class Rounding { kDown, kUp };

// Decimal string with `digits` fractional digits, rounded in direction r.
std::string to_decimal(const Rational& x, int digits, Rounding r);

// Smallest integer >= x.
Integer ceil(const Rational& x);
// Largest integer <= x.
Integer floor(const Rational& x);

}  // namespace erisk

#endif  // ERISK_ENCLOSURE_HPP_
