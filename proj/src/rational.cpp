#include "erisk/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace erisk {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

Integer parse_integer(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

}  // namespace

Rational::Rational(const Integer& numerator, const Integer& denominator) {
  if (denominator == 0) throw std::domain_error("rational with zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const std::string_view s = trim(text);
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) {
    if (!is_integer_literal(s))
      throw std::invalid_argument("not an exact rational: '" + std::string(text) + "'");
    return Rational(parse_integer(s));
  }
  const auto num = trim(s.substr(0, slash));
  const auto den = trim(s.substr(slash + 1));
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-')
    throw std::invalid_argument("not an exact rational: '" + std::string(text) + "'");
  const Integer d = parse_integer(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(parse_integer(num), d);
}

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  Rational out;
  mpq_inv(out.value_.get_mpq_t(), value_.get_mpq_t());
  return out;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("division by zero");
  value_ /= rhs.value_;
  return *this;
}

Rational pow(const Rational& x, std::uint64_t e) {
  Integer num;
  Integer den;
  mpz_pow_ui(num.get_mpz_t(), x.numerator().get_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), x.denominator().get_mpz_t(), e);
  return Rational(num, den);
}

Rational pow2(std::int64_t e) {
  Integer p = 1;
  const auto m = static_cast<mp_bitcnt_t>(e < 0 ? -e : e);
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), m);
  return e < 0 ? Rational(Integer(1), p) : Rational(p);
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

std::uint64_t bit_length(const Integer& n) {
  if (n == 0) return 0;
  return mpz_sizeinbase(n.get_mpz_t(), 2);
}

}  // namespace erisk
