#ifndef ERISK_RATIONAL_HPP_
#define ERISK_RATIONAL_HPP_

#include <gmpxx.h>

#include <Eigen/Core>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace erisk {

using Integer = mpz_class;

// Exact fraction in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(int value) : value_(value) {}
  Rational(long value) : value_(value) {}
  Rational(unsigned long value) : value_(value) {}
  Rational(long long value) : Rational(Integer(std::to_string(value))) {}
  Rational(unsigned long long value)
      : Rational(Integer(std::to_string(value))) {}
  explicit Rational(const Integer& value) : value_(value) {}
  Rational(const Integer& numerator, const Integer& denominator);
  explicit Rational(const mpq_class& value) : value_(value) {
    value_.canonicalize();
  }

  // Accepts "n", "-n", "n/d". Decimal points and exponents are rejected.
  static Rational parse(std::string_view text);

  Integer numerator() const { return value_.get_num(); }
  Integer denominator() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }

  Rational inverse() const;
  std::string str() const { return value_.get_str(); }
  double to_double() const { return value_.get_d(); }

  Rational& operator+=(const Rational& rhs) {
    value_ += rhs.value_;
    return *this;
  }
  Rational& operator-=(const Rational& rhs) {
    value_ -= rhs.value_;
    return *this;
  }
  Rational& operator*=(const Rational& rhs) {
    value_ *= rhs.value_;
    return *this;
  }
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) {
    return lhs += rhs;
  }
  friend Rational operator-(Rational lhs, const Rational& rhs) {
    return lhs -= rhs;
  }
  friend Rational operator*(Rational lhs, const Rational& rhs) {
    return lhs *= rhs;
  }
  friend Rational operator/(Rational lhs, const Rational& rhs) {
    return lhs /= rhs;
  }
  friend Rational operator-(const Rational& x) {
    Rational out;
    out.value_ = -x.value_;
    return out;
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& x) {
    return os << x.str();
  }

 private:
  mpq_class value_{0};
};

inline int sign(const Rational& x) { return x.sign(); }
inline bool is_zero(const Rational& x) { return x.is_zero(); }
inline Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

// x^e for a non-negative integer exponent.
Rational pow(const Rational& x, std::uint64_t e);
// 2^e as a rational, e may be negative.
Rational pow2(std::int64_t e);
// Least common multiple of positive integers.
Integer lcm(const Integer& a, const Integer& b);
// Number of bits of |n| (0 for n = 0).
std::uint64_t bit_length(const Integer& n);
inline std::uint64_t bit_size(const Rational& x) {
  return bit_length(x.numerator()) + bit_length(x.denominator());
}

}  // namespace erisk

namespace Eigen {

template <>
struct NumTraits<erisk::Rational> : GenericNumTraits<erisk::Rational> {
  using Real = erisk::Rational;
  using NonInteger = erisk::Rational;
  using Literal = erisk::Rational;
  using Nested = erisk::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 32
  };
};

}  // namespace Eigen

#endif  // ERISK_RATIONAL_HPP_
