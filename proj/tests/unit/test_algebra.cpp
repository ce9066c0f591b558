#include "erisk/algebra.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace erisk;

namespace {

AlgebraicNumber coords(const ExtensionPtr& ext, std::vector<Rational> c) {
  AlgebraicNumber::Coords v(static_cast<Eigen::Index>(c.size()));
  for (std::size_t i = 0; i < c.size(); ++i) v(static_cast<Eigen::Index>(i)) = c[i];
  return AlgebraicNumber(ext, v);
}

AlgebraicNumber random_element(const ExtensionPtr& ext, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 7);
  std::vector<Rational> c;
  for (std::uint64_t i = 0; i < ext->degree(); ++i) c.emplace_back(Integer(num(rng)), Integer(den(rng)));
  return coords(ext, c);
}

double approx(const AlgebraicNumber& x) { return x.enclose(60).midpoint().to_double(); }

}  // namespace

TEST_CASE("normalize_extension") {
  const auto e1 = normalize_extension(Rational(4, 9), 2);
  CHECK(e1->degree() == 1);
  CHECK(e1->base() == Rational(2, 3));
  CHECK(e1->scale() == 2);

  const auto e2 = normalize_extension(Rational(2), 2);
  CHECK(e2->degree() == 2);
  CHECK(e2->base() == Rational(2));
  CHECK(e2->minimal_polynomial() == "x^2 - 2");

  const auto e3 = normalize_extension(Rational(2), 1);
  CHECK(e3->degree() == 1);
  CHECK(e3->base() == Rational(2));

  const auto e4 = normalize_extension(Rational(8), 6);
  CHECK(e4->degree() == 2);
  CHECK(e4->base() == Rational(2));

  CHECK_THROWS_AS(normalize_extension(Rational(0), 2), std::invalid_argument);
  CHECK_THROWS_AS(normalize_extension(Rational(-1, 2), 2), std::invalid_argument);
  CHECK_THROWS_AS(normalize_extension(Rational(2), 0), std::invalid_argument);

  const Interval beta = e2->beta(100);
  CHECK(beta.width() <= pow2(-100));
  CHECK(beta.lo * beta.lo <= Rational(2));
  CHECK(beta.hi * beta.hi >= Rational(2));
}

TEST_CASE("represent_power") {
  const auto e2 = normalize_extension(Rational(2), 2);
  const AlgebraicNumber one = represent_power(Rational(1), Integer(0), e2);
  CHECK(one == AlgebraicNumber(1));
  const AlgebraicNumber r = represent_power(Rational(1), Integer(1), e2);
  CHECK(r.coordinate(0) == Rational(0));
  CHECK(r.coordinate(1) == Rational(1, 2));

  const auto e3 = normalize_extension(Rational(2), 3);
  const AlgebraicNumber t = represent_power(Rational(3), Integer(7), e3);
  CHECK(t.coordinate(0) == Rational(0));
  CHECK(t.coordinate(1) == Rational(0));
  CHECK(t.coordinate(2) == Rational(3, 8));
  CHECK(approx(t) == doctest::Approx(3 * std::pow(2.0, -7.0 / 3)).epsilon(1e-12));

  const auto e5 = normalize_extension(Rational(3), 5);
  for (int n = 0; n < 20; ++n) {
    const AlgebraicNumber x = represent_power(Rational(2, 7), Integer(n), e5);
    CHECK(approx(x) == doctest::Approx(2.0 / 7 * std::pow(3.0, -n / 5.0)).epsilon(1e-12));
  }
}

TEST_CASE("multiply and invert") {
  const auto e3 = normalize_extension(Rational(2), 3);
  const AlgebraicNumber p = multiply(AlgebraicNumber::unit(e3, 1), AlgebraicNumber::unit(e3, 2));
  CHECK(p == AlgebraicNumber(2));
  CHECK(p.is_rational());

  const auto e2 = normalize_extension(Rational(2), 2);
  const AlgebraicNumber e1 = AlgebraicNumber::unit(e2, 1);
  CHECK(multiply(e1, e1) == AlgebraicNumber(2));
  const AlgebraicNumber inv = invert(e1);
  CHECK(inv.coordinate(0) == Rational(0));
  CHECK(inv.coordinate(1) == Rational(1, 2));
  CHECK(invert(AlgebraicNumber(1)) == AlgebraicNumber(1));
  CHECK(invert(AlgebraicNumber(Rational(-3, 5))) == AlgebraicNumber(Rational(-5, 3)));
  CHECK_THROWS_AS(invert(AlgebraicNumber(0)), std::domain_error);
  CHECK_THROWS_AS(invert(coords(e2, {Rational(0), Rational(0)})), std::domain_error);

  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    const AlgebraicNumber x = random_element(e3, rng);
    CHECK(multiply(x, AlgebraicNumber(1)) == x);
    if (x.is_zero()) continue;
    CHECK(multiply(x, invert(x)) == AlgebraicNumber(1));
  }
}

TEST_CASE("mixing extensions is rejected") {
  const auto a = normalize_extension(Rational(2), 2);
  const auto b = normalize_extension(Rational(3), 2);
  CHECK_THROWS(multiply(AlgebraicNumber::unit(a, 1), AlgebraicNumber::unit(b, 1)));
}

TEST_CASE("sign_of") {
  const auto e2 = normalize_extension(Rational(2), 2);
  CHECK(sign_of(coords(e2, {Rational(0), Rational(0)})) == 0);
  CHECK(sign_of(coords(e2, {Rational(-1), Rational(1)})) == 1);
  CHECK(sign_of(coords(e2, {Rational(3), Rational(-2)})) == 1);
  CHECK(sign_of(coords(e2, {Rational(-3), Rational(2)})) == -1);
  // Convergents of sqrt 2 from either side.
  CHECK(sign_of(coords(e2, {Rational(-239, 169), Rational(1)})) == 1);
  CHECK(sign_of(coords(e2, {Rational(-99, 70), Rational(1)})) == -1);
  CHECK(sign_of(coords(e2, {Rational(-577, 408), Rational(1)})) == -1);
  CHECK(AlgebraicNumber::unit(e2, 1) > AlgebraicNumber(Rational(141, 100)));
}

TEST_CASE("lift") {
  const auto e2 = normalize_extension(Rational(2), 2);
  const auto e4 = normalize_extension(Rational(2), 4);
  const AlgebraicNumber l = lift(AlgebraicNumber::unit(e2, 1), e4);
  CHECK(l == AlgebraicNumber::unit(e4, 2));
  CHECK(lift(AlgebraicNumber(1), e4) == AlgebraicNumber(1));
  CHECK(lift(AlgebraicNumber(Rational(5, 3)), e2) == AlgebraicNumber(Rational(5, 3)));

  const auto e6 = normalize_extension(Rational(2), 6);
  const auto e3 = normalize_extension(Rational(2), 3);
  std::mt19937_64 rng(9);
  for (int i = 0; i < 20; ++i) {
    const AlgebraicNumber x = random_element(e3, rng);
    const AlgebraicNumber y = lift(x, e6);
    CHECK(approx(x) == doctest::Approx(approx(y)).epsilon(1e-12));
    const AlgebraicNumber z = random_element(e2, rng);
    CHECK(approx(lift(z, e6)) == doctest::Approx(approx(z)).epsilon(1e-12));
  }
  const auto other = normalize_extension(Rational(3), 4);
  CHECK_THROWS(lift(AlgebraicNumber::unit(e2, 1), other));
  CHECK_THROWS(lift(AlgebraicNumber::unit(e4, 1), e2));
}

TEST_CASE("field operations agree with enclosures") {
  for (const auto& [b, q] : std::vector<std::pair<Rational, std::uint64_t>>{
           {Rational(2), 2}, {Rational(2), 3}, {Rational(3), 5}, {Rational(4, 9), 2}, {Rational(5, 2), 3}}) {
    const auto ext = normalize_extension(b, q);
    std::mt19937_64 rng(q);
    for (int i = 0; i < 40; ++i) {
      const AlgebraicNumber x = random_element(ext, rng);
      const AlgebraicNumber y = random_element(ext, rng);
      const Interval ex = x.enclose(128), ey = y.enclose(128);
      const Interval prod = (x * y).enclose(128);
      const Interval expect = ex * ey;
      CHECK(prod.lo <= expect.hi);
      CHECK(expect.lo <= prod.hi);
      CHECK(sign_of(x - y) == (approx(x) < approx(y) ? -1 : approx(x) > approx(y) ? 1 : 0));
      if (!y.is_zero()) CHECK((x / y) * y == x);
    }
  }
}

TEST_CASE("bareiss over the extension") {
  const auto ext = normalize_extension(Rational(2), 2);
  const AlgebraicNumber h = represent_power(Rational(1), Integer(1), ext);
  Matrix<AlgebraicNumber> a(2, 2);
  a << AlgebraicNumber(1), -h * AlgebraicNumber(Rational(1, 2)), -h * AlgebraicNumber(Rational(1, 3)), AlgebraicNumber(1);
  Vector<AlgebraicNumber> rhs(2);
  rhs << h, AlgebraicNumber(Rational(1, 4));
  const Vector<AlgebraicNumber> x = bareiss_solve<AlgebraicNumber>(a, rhs);
  const Vector<AlgebraicNumber> r = a * x - rhs;
  CHECK(r(0).is_zero());
  CHECK(r(1).is_zero());
}
