#ifndef ERISK_ALGEBRA_HPP_
#define ERISK_ALGEBRA_HPP_

#include "erisk/enclosure.hpp"
#include "erisk/linsolve.hpp"
#include "erisk/rational.hpp"

#include <cstdint>
#include <memory>
#include <mutex>
#include <ostream>
#include <string>

namespace erisk {

// The field Q(beta) with beta = b'^(1/q') and x^q' - b' irreducible.
// Created by normalize_extension from a base b and degree q; beta equals
// b^(1/q) for the originating pair.
class Extension {
 public:
  Extension(Rational base, std::uint64_t degree, Rational source_base, std::uint64_t source_degree);

  const Rational& base() const { return base_; }
  std::uint64_t degree() const { return degree_; }
  const Rational& source_base() const { return source_base_; }
  std::uint64_t source_degree() const { return source_degree_; }
  // d with q = d * q'.
  std::uint64_t scale() const { return source_degree_ / degree_; }

  // Enclosure of beta of width at most 2^-bits; refinements are cached.
  Interval beta(std::uint64_t bits) const;

  // "x^q' - b'".
  std::string minimal_polynomial() const;

  bool same_field(const Extension& other) const {
    return degree_ == other.degree_ && base_ == other.base_;
  }

 private:
  Rational base_;
  std::uint64_t degree_;
  Rational source_base_;
  std::uint64_t source_degree_;
  mutable std::mutex mutex_;
  mutable Interval cached_{Rational(0), Rational(0)};
  mutable std::uint64_t cached_bits_ = 0;
};

using ExtensionPtr = std::shared_ptr<const Extension>;

// Divides out the largest d | q for which b = b1/b2 has integral d-th roots
// of b1 and b2. Throws std::invalid_argument for b <= 0 or q = 0.
ExtensionPtr normalize_extension(const Rational& b, std::uint64_t q);

// Element of Q(beta) as rational coordinates over (1, beta, ..., beta^(q'-1)).
// Without an extension the number is a plain rational; it is promoted when
// combined with an element of a proper extension.
class AlgebraicNumber {
 public:
  using Coords = Vector<Rational>;

  AlgebraicNumber() : coords_(Coords::Constant(1, Rational(0))) {}
  AlgebraicNumber(int value) : coords_(Coords::Constant(1, Rational(value))) {}
  AlgebraicNumber(const Rational& value) : coords_(Coords::Constant(1, value)) {}
  AlgebraicNumber(ExtensionPtr ext, Coords coords);

  // e_i, the basis element beta^i.
  static AlgebraicNumber unit(const ExtensionPtr& ext, std::uint64_t i);

  const ExtensionPtr& extension() const { return ext_; }
  std::uint64_t degree() const { return static_cast<std::uint64_t>(coords_.size()); }
  const Coords& coords() const { return coords_; }
  const Rational& coordinate(std::uint64_t i) const { return coords_(static_cast<Eigen::Index>(i)); }

  bool is_zero() const;
  // True when only the e_0 coordinate may be non-zero.
  bool is_rational() const;

  // Coordinates over the basis of `ext` (promoting plain rationals).
  Coords coords_in(const ExtensionPtr& ext) const;

  // Certified enclosure; a point for rationals.
  Interval enclose(std::uint64_t bits) const;

  // "(c0, c1, ...)".
  std::string str() const;

  AlgebraicNumber& operator+=(const AlgebraicNumber& rhs);
  AlgebraicNumber& operator-=(const AlgebraicNumber& rhs);
  AlgebraicNumber& operator*=(const AlgebraicNumber& rhs);
  AlgebraicNumber& operator/=(const AlgebraicNumber& rhs);

  friend AlgebraicNumber operator+(AlgebraicNumber a, const AlgebraicNumber& b) { return a += b; }
  friend AlgebraicNumber operator-(AlgebraicNumber a, const AlgebraicNumber& b) { return a -= b; }
  friend AlgebraicNumber operator*(AlgebraicNumber a, const AlgebraicNumber& b) { return a *= b; }
  friend AlgebraicNumber operator/(AlgebraicNumber a, const AlgebraicNumber& b) { return a /= b; }
  friend AlgebraicNumber operator-(const AlgebraicNumber& a);

  friend bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b);
  friend bool operator<(const AlgebraicNumber& a, const AlgebraicNumber& b);
  friend bool operator>(const AlgebraicNumber& a, const AlgebraicNumber& b) { return b < a; }
  friend bool operator<=(const AlgebraicNumber& a, const AlgebraicNumber& b) { return !(b < a); }
  friend bool operator>=(const AlgebraicNumber& a, const AlgebraicNumber& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const AlgebraicNumber& x) { return os << x.str(); }

 private:
  ExtensionPtr ext_;
  Coords coords_;
};

// c * b'^(-n/q') = c * beta^(-n).
AlgebraicNumber represent_power(const Rational& c, const Integer& n, const ExtensionPtr& ext);

AlgebraicNumber multiply(const AlgebraicNumber& x, const AlgebraicNumber& y);

// Throws std::domain_error for x = 0.
AlgebraicNumber invert(const AlgebraicNumber& x);

// -1, 0 or +1. Exact for zero; otherwise refines the enclosure of beta
// until the evaluated interval excludes 0.
int sign_of(const AlgebraicNumber& x);

// Re-expresses x in `target`, whose generator is a root of x's generator.
// Both must stem from the same base b with q dividing the target degree L.
AlgebraicNumber lift(const AlgebraicNumber& x, const ExtensionPtr& target);

inline bool is_zero(const AlgebraicNumber& x) { return x.is_zero(); }
inline int sign(const AlgebraicNumber& x) { return sign_of(x); }
std::uint64_t bit_size(const AlgebraicNumber& x);

}  // namespace erisk

namespace Eigen {

template <>
struct NumTraits<erisk::AlgebraicNumber> : GenericNumTraits<erisk::AlgebraicNumber> {
  using Real = erisk::AlgebraicNumber;
  using NonInteger = erisk::AlgebraicNumber;
  using Literal = erisk::AlgebraicNumber;
  using Nested = erisk::AlgebraicNumber;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 64,
    MulCost = 256
  };
};

}  // namespace Eigen

#endif  // ERISK_ALGEBRA_HPP_
