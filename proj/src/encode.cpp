#include "erisk/encode.hpp"

#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace erisk {

namespace {

std::string real(const Integer& n) {
  if (n < 0) return "(- " + Integer(-n).get_str() + ".0)";
  return n.get_str() + ".0";
}

std::string real(const Rational& x) {
  if (x.is_integer()) return real(x.numerator());
  return "(/ " + real(x.numerator()) + " " + real(x.denominator()) + ")";
}

std::string sexpr(const std::string& op, const std::vector<std::string>& args) {
  if (args.size() == 1) return args[0];
  std::string out = "(" + op;
  for (const std::string& a : args) out += " " + a;
  return out + ")";
}

std::uint64_t ceil_log2(const Integer& n) {
  std::uint64_t k = 0;
  Integer p = 1;
  while (p < n) {
    p *= 2;
    ++k;
  }
  return k;
}

// Emits definitions of b^(-e) and returns the name of the defined variable,
// or a literal when no chain is needed.
class ConstantPool {
 public:
  ConstantPool(const Rational& base, std::ostringstream& decls, std::ostringstream& asserts)
      : base_(base), decls_(decls), asserts_(asserts) {}

  std::string power(const Rational& e) {
    if (e.is_zero()) return "1.0";
    auto it = names_.find(e);
    if (it != names_.end()) return it->second;
    const std::string x = "k" + std::to_string(names_.size());
    names_.emplace(e, x);
    const Integer p = e.sign() < 0 ? Integer(-e.numerator()) : e.numerator();
    const Integer q = e.denominator();
    // d0 = b^-1 for positive exponents, b otherwise.
    const Integer lhs = e.sign() > 0 ? base_.numerator() : base_.denominator();
    const Integer rhs = e.sign() > 0 ? base_.denominator() : base_.numerator();

    declare(x);
    asserts_ << "(assert (> " << x << " 0.0))\n";
    std::vector<std::string> c{x};
    for (std::uint64_t i = 1; i <= ceil_log2(q); ++i) {
      c.push_back(x + "_c" + std::to_string(i));
      declare(c.back());
      asserts_ << "(assert (= " << c[i] << " (* " << c[i - 1] << " " << c[i - 1] << ")))\n";
    }
    std::vector<std::string> d{x + "_d0"};
    declare(d[0]);
    asserts_ << "(assert (= (* " << real(lhs) << " " << d[0] << ") " << real(rhs) << "))\n";
    for (std::uint64_t i = 1; i <= ceil_log2(p); ++i) {
      d.push_back(x + "_d" + std::to_string(i));
      declare(d.back());
      asserts_ << "(assert (= " << d[i] << " (* " << d[i - 1] << " " << d[i - 1] << ")))\n";
    }
    std::vector<std::string> dp;
    std::vector<std::string> cq;
    for (std::size_t i = 0; i < d.size(); ++i)
      if (mpz_tstbit(p.get_mpz_t(), i)) dp.push_back(d[i]);
    for (std::size_t i = 0; i < c.size(); ++i)
      if (mpz_tstbit(q.get_mpz_t(), i)) cq.push_back(c[i]);
    asserts_ << "(assert (= " << sexpr("*", dp) << " " << sexpr("*", cq) << "))\n";
    return x;
  }

  std::size_t variables() const { return variables_; }

 private:
  void declare(const std::string& name) {
    decls_ << "(declare-fun " << name << " () Real)\n";
    ++variables_;
  }

  Rational base_;
  std::ostringstream& decls_;
  std::ostringstream& asserts_;
  std::map<Rational, std::string> names_;
  std::size_t variables_ = 0;
};

std::string var(std::size_t s) { return "v" + std::to_string(s); }
std::string rank(std::size_t s) { return "rk" + std::to_string(s); }

}  // namespace

std::string emit_inequalities(const Game& g, const RiskParams& rp, const BoundarySets& bounds, EncodingStats* stats) {
  if (!rp.threshold) throw std::invalid_argument("encoding needs a threshold t");
  const std::size_t n = g.size();
  const Rational gamma = rp.effective_gamma();
  const bool stopping = check_stopping(g, bounds);

  std::ostringstream head;
  std::ostringstream decls;
  std::ostringstream asserts;
  head << "; ERisk* >= " << rp.threshold->str() << " with b = " << rp.base.str() << ", gamma = " << rp.gamma.str()
       << "\n";
  for (std::size_t s = 0; s < n; ++s) head << "; " << var(s) << " = " << g.state(s).id << "\n";
  head << "(set-logic QF_NRA)\n";

  for (std::size_t s = 0; s < n; ++s) decls << "(declare-fun " << var(s) << " () Real)\n";
  ConstantPool pool(rp.base, decls, asserts);

  const std::string thr = pool.power(rp.gamma * *rp.threshold);
  asserts << "(assert (<= " << var(g.initial()) << " " << thr << "))\n";
  for (std::size_t s = 0; s < n; ++s) {
    if (bounds.s0[s]) asserts << "(assert (= " << var(s) << " 1.0))\n";
    if (bounds.sinf[s]) asserts << "(assert (= " << var(s) << " 0.0))\n";
  }

  std::size_t ranks = 0;
  if (!stopping)
    for (std::size_t s = 0; s < n; ++s) {
      decls << "(declare-fun " << rank(s) << " () Real)\n";
      ++ranks;
    }

  for (std::size_t s = 0; s < n; ++s) {
    const std::string f = pool.power(gamma * Rational(g.reward(s)));
    std::vector<std::string> rhs;
    std::vector<std::string> descends;
    for (const Action& a : g.state(s).actions) {
      std::vector<std::string> terms;
      std::vector<std::string> lower;
      for (const Transition& t : a.distribution) {
        terms.push_back(t.probability == Rational(1) ? var(t.target) : "(* " + real(t.probability) + " " + var(t.target) + ")");
        lower.push_back("(< " + rank(t.target) + " " + rank(s) + ")");
      }
      const std::string sum = sexpr("+", terms);
      rhs.push_back(f == "1.0" ? sum : "(* " + f + " " + sum + ")");
      descends.push_back(sexpr("or", lower));
    }
    const char* rel = g.owner(s) == Player::kMax ? "<=" : ">=";
    std::vector<std::string> eqs;
    for (const std::string& e : rhs) {
      asserts << "(assert (" << rel << " " << var(s) << " " << e << "))\n";
      eqs.push_back("(= " + var(s) + " " + e + ")");
    }
    asserts << "(assert " << sexpr("or", eqs) << ")\n";

    const bool free_state = bounds.anchored(s) || g.reward(s) > 0;
    if (stopping || free_state) continue;
    if (g.owner(s) == Player::kMax) {
      std::vector<std::string> proper;
      for (std::size_t a = 0; a < eqs.size(); ++a) proper.push_back("(and " + eqs[a] + " " + descends[a] + ")");
      asserts << "(assert " << sexpr("or", proper) << ")\n";
    } else {
      for (const std::string& d : descends) asserts << "(assert " << d << ")\n";
    }
  }

  if (stats) {
    stats->state_variables = n;
    stats->chain_variables = pool.variables();
    stats->rank_variables = ranks;
  }
  return head.str() + decls.str() + asserts.str() + "(check-sat)\n";
}

}  // namespace erisk
