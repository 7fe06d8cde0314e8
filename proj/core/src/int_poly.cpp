#include "qlw/int_poly.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace qlw {

namespace {

const mpz_class& zero_coeff() {
  static const mpz_class z = 0;
  return z;
}

// Long division of a by b over Z; returns the quotient if it is exact.
std::optional<IntPoly> try_divexact(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw std::domain_error("IntPoly: division by zero");
  if (a.is_zero()) return IntPoly{};
  if (a.degree() < b.degree()) return std::nullopt;
  std::vector<mpz_class> rem(a.coeffs().begin(), a.coeffs().end());
  const int db = b.degree();
  std::vector<mpz_class> quot(a.degree() - db + 1);
  mpz_class t;
  for (int i = a.degree(); i >= db; --i) {
    if (rem[i] == 0) continue;
    if (!mpz_divisible_p(rem[i].get_mpz_t(), b.lead().get_mpz_t())) return std::nullopt;
    mpz_divexact(t.get_mpz_t(), rem[i].get_mpz_t(), b.lead().get_mpz_t());
    quot[i - db] = t;
    for (int j = 0; j <= db; ++j) {
      if (b[j] != 0) rem[i - db + j] -= t * b[j];
    }
  }
  for (int i = 0; i < db; ++i) {
    if (rem[i] != 0) return std::nullopt;
  }
  return IntPoly(std::move(quot));
}

// Pseudo-remainder: lc(b)^k * a mod b, computed by sparse elimination.
IntPoly pseudo_remainder(IntPoly a, const IntPoly& b) {
  const int db = b.degree();
  std::vector<mpz_class> r(a.coeffs().begin(), a.coeffs().end());
  const mpz_class& lb = b.lead();
  for (int i = static_cast<int>(r.size()) - 1; i >= db; --i) {
    if (r[i] == 0) continue;
    mpz_class lr = r[i];
    for (auto& c : r) c *= lb;
    for (int j = 0; j <= db; ++j) {
      if (b[j] != 0) r[i - db + j] -= lr * b[j];
    }
  }
  r.resize(std::max(0, db));
  return IntPoly(std::move(r));
}

}  // namespace

IntPoly::IntPoly(const mpz_class& c) {
  if (c != 0) c_.push_back(c);
}

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly IntPoly::monomial(const mpz_class& c, int degree) {
  if (degree < 0) throw std::invalid_argument("IntPoly::monomial: negative degree");
  if (c == 0) return {};
  std::vector<mpz_class> v(degree + 1);
  v[degree] = c;
  return IntPoly(std::move(v));
}

void IntPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

int IntPoly::valuation() const {
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] != 0) return static_cast<int>(i);
  }
  return 0;
}

const mpz_class& IntPoly::operator[](int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return zero_coeff();
  return c_[i];
}

mpz_class IntPoly::content() const {
  mpz_class g = 0;
  for (const auto& c : c_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPoly IntPoly::primitive_part() const {
  if (is_zero()) return {};
  mpz_class g = content();
  if (lead() < 0) g = -g;
  return divexact(g);
}

IntPoly IntPoly::shift_up(int k) const {
  if (k < 0) return shift_down(-k);
  if (is_zero() || k == 0) return *this;
  std::vector<mpz_class> v(c_.size() + k);
  std::copy(c_.begin(), c_.end(), v.begin() + k);
  IntPoly p;
  p.c_ = std::move(v);
  return p;
}

IntPoly IntPoly::shift_down(int k) const {
  if (k < 0) return shift_up(-k);
  if (k == 0) return *this;
  for (int i = 0; i < std::min<int>(k, c_.size()); ++i) {
    if (c_[i] != 0) throw std::domain_error("IntPoly::shift_down: not divisible by q^k");
  }
  if (k >= static_cast<int>(c_.size())) return {};
  return IntPoly(std::vector<mpz_class>(c_.begin() + k, c_.end()));
}

IntPoly IntPoly::reversed() const {
  std::vector<mpz_class> v(c_.rbegin(), c_.rend());
  return IntPoly(std::move(v));
}

IntPoly IntPoly::operator-() const {
  IntPoly p = *this;
  for (auto& c : p.c_) c = -c;
  return p;
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

IntPoly& IntPoly::operator*=(const mpz_class& c) {
  if (c == 0) {
    c_.clear();
    return *this;
  }
  for (auto& x : c_) x *= c;
  return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (b.is_constant()) return a * b.c_[0];
  if (a.is_constant()) return b * a.c_[0];
  std::vector<mpz_class> v(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j] == 0) continue;
      mpz_addmul(v[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
    }
  }
  return IntPoly(std::move(v));
}

IntPoly IntPoly::divexact(const mpz_class& c) const {
  if (c == 0) throw std::domain_error("IntPoly::divexact: division by zero");
  if (c == 1) return *this;
  IntPoly p = *this;
  for (auto& x : p.c_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
  return p;
}

IntPoly IntPoly::divexact(const IntPoly& a, const IntPoly& b) {
  auto q = try_divexact(a, b);
  if (!q) throw std::domain_error("IntPoly::divexact: inexact division");
  return *std::move(q);
}

IntPoly IntPoly::gcd(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero()) return b.primitive_part();
  if (b.is_zero()) return a.primitive_part();
  if (a.is_constant() || b.is_constant()) return IntPoly(mpz_class(1));

  // Common factors of q are pulled out first; the rest has nonzero
  // constant terms.
  const int v = std::min(a.valuation(), b.valuation());
  IntPoly x = a.shift_down(a.valuation()).primitive_part();
  IntPoly y = b.shift_down(b.valuation()).primitive_part();
  if (x.degree() < y.degree()) std::swap(x, y);

  if (y.is_constant()) return IntPoly::monomial(1, v);
  if (x == y) return x.shift_up(v);
  if (try_divexact(x, y)) return y.shift_up(v);

  while (!y.is_zero()) {
    IntPoly r = pseudo_remainder(x, y);
    x = std::move(y);
    y = r.primitive_part();
    if (!y.is_zero() && y.is_constant()) return IntPoly::monomial(1, v);
  }
  return x.primitive_part().shift_up(v);
}

mpq_class IntPoly::evaluate(const mpq_class& x) const {
  mpq_class acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

std::string IntPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (c_[i] == 0) continue;
    if (!first) os << "+";
    first = false;
    os << c_[i].get_str() << "*" << var << "^" << i;
  }
  return os.str();
}

}  // namespace qlw
