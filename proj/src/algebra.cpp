#include "erisk/algebra.hpp"

#include <sstream>
#include <stdexcept>

namespace erisk {

namespace {

bool perfect_root(const Integer& x, std::uint64_t k, Integer* root) {
  Integer r;
  const int exact = mpz_root(r.get_mpz_t(), x.get_mpz_t(), k);
  if (exact != 0 && root) *root = r;
  return exact != 0;
}

Rational pow_int(const Rational& x, const Integer& e) {
  if (!e.fits_ulong_p()) throw std::overflow_error("exponent too large");
  return pow(x, e.get_ui());
}

}  // namespace

Extension::Extension(Rational base, std::uint64_t degree, Rational source_base, std::uint64_t source_degree)
    : base_(std::move(base)),
      degree_(degree),
      source_base_(std::move(source_base)),
      source_degree_(source_degree) {}

Interval Extension::beta(std::uint64_t bits) const {
  std::lock_guard<std::mutex> lock(mutex_);
  if (cached_bits_ < bits) {
    cached_ = root_enclosure(base_, degree_, bits);
    cached_bits_ = bits;
  }
  return cached_;
}

std::string Extension::minimal_polynomial() const {
  return "x^" + std::to_string(degree_) + " - " + base_.str();
}

ExtensionPtr normalize_extension(const Rational& b, std::uint64_t q) {
  if (b.sign() <= 0) throw std::invalid_argument("extension base must be positive, got " + b.str());
  if (q == 0) throw std::invalid_argument("extension degree must be positive");
  for (std::uint64_t d = q; d >= 1; --d) {
    if (q % d != 0) continue;
    Integer r1;
    Integer r2;
    if (perfect_root(b.numerator(), d, &r1) && perfect_root(b.denominator(), d, &r2))
      return std::make_shared<const Extension>(Rational(r1, r2), q / d, b, q);
  }
  throw std::logic_error("unreachable: d = 1 always qualifies");
}

AlgebraicNumber::AlgebraicNumber(ExtensionPtr ext, Coords coords) : ext_(std::move(ext)), coords_(std::move(coords)) {
  const std::uint64_t want = ext_ ? ext_->degree() : 1;
  if (static_cast<std::uint64_t>(coords_.size()) != want)
    throw std::invalid_argument("coordinate count does not match extension degree");
  if (ext_ && ext_->degree() == 1) ext_.reset();
}

AlgebraicNumber AlgebraicNumber::unit(const ExtensionPtr& ext, std::uint64_t i) {
  Coords c = Coords::Constant(static_cast<Eigen::Index>(ext->degree()), Rational(0));
  c(static_cast<Eigen::Index>(i)) = Rational(1);
  return AlgebraicNumber(ext, std::move(c));
}

bool AlgebraicNumber::is_zero() const {
  for (Eigen::Index i = 0; i < coords_.size(); ++i)
    if (!coords_(i).is_zero()) return false;
  return true;
}

bool AlgebraicNumber::is_rational() const {
  for (Eigen::Index i = 1; i < coords_.size(); ++i)
    if (!coords_(i).is_zero()) return false;
  return true;
}

AlgebraicNumber::Coords AlgebraicNumber::coords_in(const ExtensionPtr& ext) const {
  if (!ext) {
    if (!is_rational()) throw std::invalid_argument("extension mismatch");
    return Coords::Constant(1, coords_(0));
  }
  if (ext_) {
    if (!ext_->same_field(*ext)) throw std::invalid_argument("extension mismatch");
    return coords_;
  }
  Coords c = Coords::Constant(static_cast<Eigen::Index>(ext->degree()), Rational(0));
  c(0) = coords_(0);
  return c;
}

Interval AlgebraicNumber::enclose(std::uint64_t bits) const {
  if (!ext_ || is_rational()) return Interval::point(coords_(0));
  // Extra bits absorb the growth of beta^i and the coordinate magnitudes.
  std::uint64_t extra = 8 + 2 * static_cast<std::uint64_t>(coords_.size());
  for (Eigen::Index i = 0; i < coords_.size(); ++i) extra += bit_length(coords_(i).numerator());
  extra += bit_length(ext_->base().numerator()) + 1;
  const Interval beta = ext_->beta(bits + extra);
  Interval power = Interval::point(Rational(1));
  Interval sum = Interval::point(coords_(0));
  for (Eigen::Index i = 1; i < coords_.size(); ++i) {
    power = power * beta;
    if (!coords_(i).is_zero()) sum = sum + Interval::point(coords_(i)) * power;
  }
  return sum;
}

std::string AlgebraicNumber::str() const {
  std::ostringstream os;
  os << '(';
  for (Eigen::Index i = 0; i < coords_.size(); ++i) os << (i ? ", " : "") << coords_(i).str();
  os << ')';
  return os.str();
}

namespace {

ExtensionPtr common(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (a.extension() && b.extension() && !a.extension()->same_field(*b.extension()))
    throw std::invalid_argument("extension mismatch");
  return a.extension() ? a.extension() : b.extension();
}

}  // namespace

AlgebraicNumber& AlgebraicNumber::operator+=(const AlgebraicNumber& rhs) {
  const ExtensionPtr ext = common(*this, rhs);
  *this = AlgebraicNumber(ext, Coords(coords_in(ext) + rhs.coords_in(ext)));
  return *this;
}

AlgebraicNumber& AlgebraicNumber::operator-=(const AlgebraicNumber& rhs) {
  const ExtensionPtr ext = common(*this, rhs);
  *this = AlgebraicNumber(ext, Coords(coords_in(ext) - rhs.coords_in(ext)));
  return *this;
}

AlgebraicNumber& AlgebraicNumber::operator*=(const AlgebraicNumber& rhs) {
  *this = multiply(*this, rhs);
  return *this;
}

AlgebraicNumber& AlgebraicNumber::operator/=(const AlgebraicNumber& rhs) {
  *this = multiply(*this, invert(rhs));
  return *this;
}

AlgebraicNumber operator-(const AlgebraicNumber& a) { return AlgebraicNumber(a.ext_, AlgebraicNumber::Coords(-a.coords_)); }

bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  const ExtensionPtr ext = common(a, b);
  return a.coords_in(ext) == b.coords_in(ext);
}

bool operator<(const AlgebraicNumber& a, const AlgebraicNumber& b) { return sign_of(a - b) < 0; }

AlgebraicNumber represent_power(const Rational& c, const Integer& n, const ExtensionPtr& ext) {
  if (!ext) throw std::invalid_argument("represent_power needs an extension");
  if (n < 0) throw std::invalid_argument("represent_power needs n >= 0");
  const Integer q = Integer(static_cast<unsigned long>(ext->degree()));
  const Integer k = n / q;
  const Integer l = n % q;
  if (l == 0) {
    AlgebraicNumber out = AlgebraicNumber::unit(ext, 0);
    return multiply(out, AlgebraicNumber(c / pow_int(ext->base(), k)));
  }
  const Rational coeff = c / pow_int(ext->base(), k + 1);
  AlgebraicNumber out = AlgebraicNumber::unit(ext, ext->degree() - l.get_ui());
  return multiply(out, AlgebraicNumber(coeff));
}

AlgebraicNumber multiply(const AlgebraicNumber& x, const AlgebraicNumber& y) {
  const ExtensionPtr ext = common(x, y);
  if (!ext) return AlgebraicNumber(x.coordinate(0) * y.coordinate(0));
  const auto xc = x.coords_in(ext);
  const auto yc = y.coords_in(ext);
  const Eigen::Index q = xc.size();
  AlgebraicNumber::Coords out = AlgebraicNumber::Coords::Constant(q, Rational(0));
  for (Eigen::Index l = 0; l < q; ++l) {
    if (xc(l).is_zero()) continue;
    for (Eigen::Index h = 0; h < q; ++h) {
      if (yc(h).is_zero()) continue;
      const Rational term = xc(l) * yc(h);
      if (l + h < q) {
        out(l + h) += term;
      } else {
        out(l + h - q) += term * ext->base();
      }
    }
  }
  return AlgebraicNumber(ext, std::move(out));
}

AlgebraicNumber invert(const AlgebraicNumber& x) {
  if (x.is_zero()) throw std::domain_error("inverse of zero");
  const ExtensionPtr& ext = x.extension();
  if (!ext || x.is_rational()) {
    AlgebraicNumber::Coords c = x.coords();
    c(0) = c(0).inverse();
    return AlgebraicNumber(ext, std::move(c));
  }
  const Eigen::Index q = static_cast<Eigen::Index>(ext->degree());
  Matrix<Rational> m(q, q);
  for (Eigen::Index h = 0; h < q; ++h) m.col(h) = multiply(x, AlgebraicNumber::unit(ext, h)).coords();
  Vector<Rational> e0 = Vector<Rational>::Constant(q, Rational(0));
  e0(0) = Rational(1);
  return AlgebraicNumber(ext, bareiss_solve<Rational>(m, e0));
}

int sign_of(const AlgebraicNumber& x) {
  if (x.is_zero()) return 0;
  if (x.is_rational()) return x.coordinate(0).sign();
  for (std::uint64_t bits = 64;; bits *= 2) {
    const Interval i = x.enclose(bits);
    if (i.lo.sign() > 0) return 1;
    if (i.hi.sign() < 0) return -1;
  }
}

AlgebraicNumber lift(const AlgebraicNumber& x, const ExtensionPtr& target) {
  if (!target) {
    if (!x.is_rational()) throw std::invalid_argument("lift: target is not an extension of the source");
    return AlgebraicNumber(x.coordinate(0));
  }
  if (!x.extension() || x.is_rational()) return AlgebraicNumber(target, AlgebraicNumber(x.coordinate(0)).coords_in(target));
  const Extension& src = *x.extension();
  if (src.same_field(*target)) return AlgebraicNumber(target, x.coords());
  if (src.source_base() != target->source_base() || target->source_degree() % src.source_degree() != 0)
    throw std::invalid_argument("lift: target is not an extension of the source");
  const std::uint64_t k = target->source_degree() / src.source_degree();
  const std::uint64_t q = target->degree();
  AlgebraicNumber::Coords out = AlgebraicNumber::Coords::Constant(static_cast<Eigen::Index>(q), Rational(0));
  for (std::uint64_t i = 0; i < x.degree(); ++i) {
    const Rational& c = x.coordinate(i);
    if (c.is_zero()) continue;
    const std::uint64_t m = i * k;
    out(static_cast<Eigen::Index>(m % q)) += c * pow(target->base(), m / q);
  }
  return AlgebraicNumber(target, std::move(out));
}

std::uint64_t bit_size(const AlgebraicNumber& x) {
  std::uint64_t total = 0;
  for (std::uint64_t i = 0; i < x.degree(); ++i) total += bit_size(x.coordinate(i));
  return total;
}

}  // namespace erisk
