#include "qlw/scalar.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace qlw {

namespace {

// Divides num and den by their joint integer content and fixes the sign
// so that den has a positive leading coefficient.
void normalize_content(IntPoly& num, IntPoly& den) {
  mpz_class g = den.content();
  if (g != 1) {
    for (const auto& c : num.coeffs()) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
      if (g == 1) break;
    }
  }
  if (den.lead() < 0) g = -g;
  if (g != 1) {
    num = num.divexact(g);
    den = den.divexact(g);
  }
}

bool is_unit_poly(const IntPoly& p) { return p.is_constant(); }

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  ScalarQ parse_all() {
    ScalarQ v = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("ScalarQ::parse: " + what + " at position " +
                                std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ScalarQ expr() {
    ScalarQ v = term();
    for (;;) {
      if (accept('+')) {
        v += term();
      } else if (accept('-')) {
        v -= term();
      } else {
        return v;
      }
    }
  }

  ScalarQ term() {
    ScalarQ v = unary();
    for (;;) {
      if (accept('*')) {
        v *= unary();
      } else if (accept('/')) {
        ScalarQ d = unary();
        if (d.is_zero()) fail("division by zero");
        v /= d;
      } else {
        return v;
      }
    }
  }

  ScalarQ unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  ScalarQ power() {
    ScalarQ base = primary();
    if (accept('^')) {
      long e = exponent();
      if (base.is_zero() && e < 0) fail("zero to a negative power");
      return base.pow(e);
    }
    return base;
  }

  long exponent() {
    bool paren = accept('(');
    bool neg = false;
    if (accept('-')) {
      neg = true;
    } else {
      accept('+');
    }
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    long e = std::stol(std::string(s_.substr(start, pos_ - start)));
    if (paren && !accept(')')) fail("expected ')'");
    return neg ? -e : e;
  }

  ScalarQ primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      ScalarQ v = expr();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    if (c == 'q') {
      ++pos_;
      return ScalarQ::q();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return ScalarQ(mpz_class(std::string(s_.substr(start, pos_ - start))));
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

ScalarQ::ScalarQ(long v) : num_(mpz_class(v)), den_(mpz_class(1)) {}

ScalarQ::ScalarQ(const mpz_class& v) : num_(v), den_(mpz_class(1)) {}

ScalarQ::ScalarQ(const mpq_class& v) {
  mpq_class c = v;
  c.canonicalize();
  num_ = IntPoly(c.get_num());
  den_ = IntPoly(c.get_den());
}

ScalarQ ScalarQ::q() { return q_power(1); }

ScalarQ ScalarQ::q_power(int e) {
  ScalarQ s(1L);
  s.shift_ = e;
  return s;
}

ScalarQ ScalarQ::from_parts(IntPoly num, IntPoly den, int shift) {
  ScalarQ s;
  s.num_ = std::move(num);
  s.den_ = std::move(den);
  s.shift_ = shift;
  s.normalize();
  return s;
}

void ScalarQ::normalize() {
  if (den_.is_zero()) throw std::domain_error("ScalarQ: zero denominator");
  if (num_.is_zero()) {
    shift_ = 0;
    den_ = IntPoly(mpz_class(1));
    return;
  }
  const int vn = num_.valuation();
  const int vd = den_.valuation();
  if (vn) num_ = num_.shift_down(vn);
  if (vd) den_ = den_.shift_down(vd);
  shift_ += vn - vd;
  if (!is_unit_poly(num_) && !is_unit_poly(den_)) {
    IntPoly g = IntPoly::gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = IntPoly::divexact(num_, g);
      den_ = IntPoly::divexact(den_, g);
    }
  }
  normalize_content(num_, den_);
}

std::optional<mpq_class> ScalarQ::constant_value() const {
  if (is_zero()) return mpq_class(0);
  if (!is_constant()) return std::nullopt;
  mpq_class v(num_[0], den_[0]);
  v.canonicalize();
  return v;
}

ScalarQ ScalarQ::operator-() const {
  ScalarQ s = *this;
  s.num_ = -s.num_;
  return s;
}

ScalarQ& ScalarQ::operator+=(const ScalarQ& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  const int s = std::min(shift_, o.shift_);
  IntPoly a = num_.shift_up(shift_ - s);
  IntPoly b = o.num_.shift_up(o.shift_ - s);
  if (den_ == o.den_) {
    IntPoly n = a + b;
    IntPoly d = den_;
    shift_ = s;
    num_ = std::move(n);
    den_ = std::move(d);
    normalize();
    return *this;
  }
  if (is_unit_poly(den_) && is_unit_poly(o.den_)) {
    const mpz_class& da = den_[0];
    const mpz_class& db = o.den_[0];
    num_ = a * db + b * da;
    den_ = IntPoly(mpz_class(da * db));
    shift_ = s;
    normalize();
    return *this;
  }
  IntPoly g = IntPoly::gcd(den_, o.den_);
  IntPoly da = IntPoly::divexact(den_, g);
  IntPoly db = IntPoly::divexact(o.den_, g);
  IntPoly n = a * db + b * da;
  IntPoly d = den_ * db;
  shift_ = s;
  num_ = std::move(n);
  den_ = std::move(d);
  if (num_.is_zero()) {
    *this = ScalarQ();
    return *this;
  }
  const int vn = num_.valuation();
  if (vn) {
    num_ = num_.shift_down(vn);
    shift_ += vn;
  }
  if (!g.is_constant() && !num_.is_constant()) {
    IntPoly h = IntPoly::gcd(num_, g);
    if (!h.is_constant()) {
      num_ = IntPoly::divexact(num_, h);
      den_ = IntPoly::divexact(den_, h);
    }
  }
  normalize_content(num_, den_);
  return *this;
}

ScalarQ& ScalarQ::operator-=(const ScalarQ& o) { return *this += -o; }

ScalarQ operator*(const ScalarQ& a, const ScalarQ& b) {
  if (a.is_zero() || b.is_zero()) return {};
  ScalarQ r;
  r.shift_ = a.shift_ + b.shift_;
  if (a.is_monomial() && b.is_monomial()) {
    r.num_ = a.num_ * b.num_;
    r.den_ = a.den_ * b.den_;
    normalize_content(r.num_, r.den_);
    return r;
  }
  IntPoly an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
  if (!an.is_constant() && !bd.is_constant()) {
    IntPoly g = IntPoly::gcd(an, bd);
    if (!g.is_constant()) {
      an = IntPoly::divexact(an, g);
      bd = IntPoly::divexact(bd, g);
    }
  }
  if (!bn.is_constant() && !ad.is_constant()) {
    IntPoly g = IntPoly::gcd(bn, ad);
    if (!g.is_constant()) {
      bn = IntPoly::divexact(bn, g);
      ad = IntPoly::divexact(ad, g);
    }
  }
  r.num_ = an * bn;
  r.den_ = ad * bd;
  normalize_content(r.num_, r.den_);
  return r;
}

ScalarQ& ScalarQ::operator*=(const ScalarQ& o) { return *this = *this * o; }

ScalarQ operator/(const ScalarQ& a, const ScalarQ& b) { return a * b.inverse(); }

ScalarQ& ScalarQ::operator/=(const ScalarQ& o) { return *this = *this / o; }

ScalarQ ScalarQ::inverse() const {
  if (is_zero()) throw std::domain_error("ScalarQ: inverse of zero");
  ScalarQ s;
  s.shift_ = -shift_;
  s.num_ = den_;
  s.den_ = num_;
  if (s.den_.lead() < 0) {
    s.num_ = -s.num_;
    s.den_ = -s.den_;
  }
  return s;
}

ScalarQ ScalarQ::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  if (is_monomial()) {
    ScalarQ s;
    s.shift_ = static_cast<int>(shift_ * e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), num_.is_zero() ? mpz_class(0).get_mpz_t() : num_[0].get_mpz_t(), e);
    mpz_pow_ui(d.get_mpz_t(), den_[0].get_mpz_t(), e);
    if (e == 0) {
      n = 1;
      d = 1;
      s.shift_ = 0;
    }
    if (n == 0) return {};
    s.num_ = IntPoly(n);
    s.den_ = IntPoly(d);
    return s;
  }
  ScalarQ result(1L);
  ScalarQ base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

ScalarQ ScalarQ::substitute_inverse() const {
  if (is_zero()) return {};
  return from_parts(num_.reversed(), den_.reversed(), -shift_ - num_.degree() + den_.degree());
}

mpq_class ScalarQ::evaluate(const mpq_class& q0) const {
  if (is_zero()) return 0;
  mpq_class d = den_.evaluate(q0);
  if (d == 0) throw std::domain_error("ScalarQ::evaluate: pole at " + q0.get_str());
  if (q0 == 0 && shift_ < 0) throw std::domain_error("ScalarQ::evaluate: pole at 0");
  mpq_class v = num_.evaluate(q0) / d;
  if (shift_ != 0) {
    mpq_class p = 1;
    mpq_class b = shift_ > 0 ? q0 : mpq_class(1) / q0;
    for (int i = 0; i < std::abs(shift_); ++i) p *= b;
    v *= p;
  }
  v.canonicalize();
  return v;
}

std::string ScalarQ::to_string() const {
  if (is_zero()) return "0";
  auto render = [](const IntPoly& p, int shift) {
    std::ostringstream os;
    bool first = true;
    for (int i = p.degree(); i >= 0; --i) {
      if (p[i] == 0) continue;
      if (!first) os << "+";
      first = false;
      os << p[i].get_str() << "*q^" << (i + shift);
    }
    return os.str();
  };
  if (den_.is_one()) return render(num_, shift_);
  return "(" + render(num_, shift_) + ")/(" + render(den_, 0) + ")";
}

ScalarQ ScalarQ::parse(std::string_view text) { return Parser(text).parse_all(); }

std::size_t ScalarQ::hash() const {
  std::size_t h = std::hash<int>{}(shift_);
  auto mix = [&h](const IntPoly& p) {
    for (const auto& c : p.coeffs()) {
      std::size_t v = mpz_get_ui(c.get_mpz_t()) ^ (static_cast<std::size_t>(mpz_sgn(c.get_mpz_t()) + 1) << 60);
      h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    h ^= 0x51ed27u + (h << 6) + (h >> 2);
  };
  mix(num_);
  mix(den_);
  return h;
}

std::ostream& operator<<(std::ostream& os, const ScalarQ& s) { return os << s.to_string(); }

NumericQ NumericQ::checked(const mpq_class& q0) {
  if (q0 == 0 || q0 == 1 || q0 == -1) {
    throw std::invalid_argument("numeric q must not be 0, 1 or -1 (got " + q0.get_str() + ")");
  }
  return NumericQ{q0};
}

}  // namespace qlw
