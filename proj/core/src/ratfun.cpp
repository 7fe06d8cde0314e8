#include "qlw/ratfun.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qlw {

namespace {

const ScalarQ& zero_scalar() {
  static const ScalarQ z;
  return z;
}

// (alpha t + beta)^i (gamma t + delta)^(n - i) summed against coefficients.
ZPoly homogenize(const ZPoly& p, int n, const ZPoly& top, const ZPoly& bottom) {
  ZPoly acc;
  std::vector<ZPoly> top_pow{ZPoly(ScalarQ(1L))};
  std::vector<ZPoly> bottom_pow{ZPoly(ScalarQ(1L))};
  for (int i = 1; i <= n; ++i) {
    top_pow.push_back(top_pow.back() * top);
    bottom_pow.push_back(bottom_pow.back() * bottom);
  }
  for (int i = 0; i <= p.degree(); ++i) {
    if (p[i].is_zero()) continue;
    acc += top_pow[i] * bottom_pow[n - i] * p[i];
  }
  return acc;
}

}  // namespace

Matrix q_power_diagonal(const std::vector<int>& weights, const ScalarQ& q) {
  std::vector<ScalarQ> d;
  d.reserve(weights.size());
  for (int w : weights) d.push_back(q.pow(w));
  return Matrix::diagonal(d);
}

Matrix substitute_inverse(const Matrix& m) {
  return m.map([](const ScalarQ& x) { return x.substitute_inverse(); });
}

ZPoly::ZPoly(const ScalarQ& c) {
  if (!c.is_zero()) c_.push_back(c);
}

ZPoly::ZPoly(std::vector<ScalarQ> coeffs) : c_(std::move(coeffs)) { trim(); }

ZPoly ZPoly::monomial(const ScalarQ& c, int degree) {
  if (degree < 0) throw std::invalid_argument("ZPoly::monomial: negative degree");
  if (c.is_zero()) return {};
  std::vector<ScalarQ> v(degree + 1);
  v[degree] = c;
  return ZPoly(std::move(v));
}

void ZPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

bool ZPoly::is_monomial() const {
  if (is_zero()) return false;
  for (int i = 0; i < degree(); ++i) {
    if (!c_[i].is_zero()) return false;
  }
  return true;
}

int ZPoly::valuation() const {
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (!c_[i].is_zero()) return static_cast<int>(i);
  }
  return 0;
}

const ScalarQ& ZPoly::operator[](int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return zero_scalar();
  return c_[i];
}

ZPoly ZPoly::operator-() const {
  ZPoly p = *this;
  for (auto& c : p.c_) c = -c;
  return p;
}

ZPoly& ZPoly::operator+=(const ZPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) {
    if (!o.c_[i].is_zero()) c_[i] += o.c_[i];
  }
  trim();
  return *this;
}

ZPoly& ZPoly::operator-=(const ZPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) {
    if (!o.c_[i].is_zero()) c_[i] -= o.c_[i];
  }
  trim();
  return *this;
}

ZPoly operator*(const ZPoly& a, const ZPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<ScalarQ> v(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j].is_zero()) continue;
      v[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return ZPoly(std::move(v));
}

ZPoly operator*(ZPoly a, const ScalarQ& c) {
  if (c.is_zero()) return {};
  if (c.is_one()) return a;
  for (auto& x : a.c_) {
    if (!x.is_zero()) x *= c;
  }
  return a;
}

ZPoly ZPoly::monic() const {
  if (is_zero() || lead().is_one()) return *this;
  return *this * lead().inverse();
}

ZPoly ZPoly::shift(int k) const {
  if (is_zero() || k == 0) return *this;
  if (k > 0) {
    std::vector<ScalarQ> v(c_.size() + k);
    std::copy(c_.begin(), c_.end(), v.begin() + k);
    return ZPoly(std::move(v));
  }
  const int m = -k;
  for (int i = 0; i < std::min<int>(m, c_.size()); ++i) {
    if (!c_[i].is_zero()) throw std::domain_error("ZPoly::shift: not divisible by z^k");
  }
  if (m >= static_cast<int>(c_.size())) return {};
  return ZPoly(std::vector<ScalarQ>(c_.begin() + m, c_.end()));
}

ZPoly ZPoly::reversed(int n) const {
  if (is_zero()) return {};
  if (n < degree()) throw std::invalid_argument("ZPoly::reversed: n below degree");
  std::vector<ScalarQ> v(n + 1);
  for (int i = 0; i <= degree(); ++i) v[n - i] = c_[i];
  return ZPoly(std::move(v));
}

ZPoly ZPoly::scale(const ScalarQ& c) const {
  if (c.is_one()) return *this;
  ZPoly p = *this;
  ScalarQ f(1L);
  for (auto& x : p.c_) {
    if (!x.is_zero()) x *= f;
    f *= c;
  }
  p.trim();
  return p;
}

ScalarQ ZPoly::evaluate(const ScalarQ& z0) const {
  ScalarQ acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= z0;
    acc += *it;
  }
  return acc;
}

std::pair<ZPoly, ZPoly> ZPoly::divmod(const ZPoly& a, const ZPoly& b) {
  if (b.is_zero()) throw std::domain_error("ZPoly::divmod: division by zero");
  if (a.degree() < b.degree()) return {ZPoly(), a};
  std::vector<ScalarQ> rem = a.c_;
  const int db = b.degree();
  std::vector<ScalarQ> quot(a.degree() - db + 1);
  const ScalarQ inv_lead = b.lead().inverse();
  for (int i = a.degree(); i >= db; --i) {
    if (rem[i].is_zero()) continue;
    ScalarQ t = rem[i] * inv_lead;
    quot[i - db] = t;
    for (int j = 0; j <= db; ++j) {
      if (!b.c_[j].is_zero()) rem[i - db + j] -= t * b.c_[j];
    }
  }
  rem.resize(db);
  return {ZPoly(std::move(quot)), ZPoly(std::move(rem))};
}

ZPoly ZPoly::gcd(const ZPoly& a, const ZPoly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return ZPoly(ScalarQ(1L));
  if (a.is_monomial() || b.is_monomial()) {
    return monomial(ScalarQ(1L), std::min(a.valuation(), b.valuation()));
  }
  // Powers of z are split off first; they are the common case.
  const int v = std::min(a.valuation(), b.valuation());
  ZPoly x = a.shift(-a.valuation()).monic();
  ZPoly y = b.shift(-b.valuation()).monic();
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    ZPoly r = divmod(x, y).second;
    x = std::move(y);
    y = r.monic();
    if (!y.is_zero() && y.is_constant()) {
      x = ZPoly(ScalarQ(1L));
      break;
    }
  }
  return x.monic().shift(v);
}

std::string ZPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (c_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c_[i].to_string() << ")*z^" << i;
  }
  return os.str();
}

RatFunZ::RatFunZ(const ScalarQ& c) : num_(c), den_(ScalarQ(1L)) {}

RatFunZ::RatFunZ(ZPoly num) : num_(std::move(num)), den_(ScalarQ(1L)) {}

RatFunZ::RatFunZ(ZPoly num, ZPoly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

RatFunZ RatFunZ::z_power(int k) {
  if (k >= 0) return RatFunZ(ZPoly::monomial(ScalarQ(1L), k));
  RatFunZ f;
  f.num_ = ZPoly(ScalarQ(1L));
  f.den_ = ZPoly::monomial(ScalarQ(1L), -k);
  return f;
}

void RatFunZ::normalize() {
  if (den_.is_zero()) throw std::domain_error("RatFunZ: zero denominator");
  if (num_.is_zero()) {
    den_ = ZPoly(ScalarQ(1L));
    return;
  }
  ZPoly g = ZPoly::gcd(num_, den_);
  if (!g.is_constant()) {
    num_ = ZPoly::divmod(num_, g).first;
    den_ = ZPoly::divmod(den_, g).first;
  }
  if (!den_.lead().is_one()) {
    ScalarQ inv = den_.lead().inverse();
    num_ = num_ * inv;
    den_ = den_ * inv;
  }
}

RatFunZ RatFunZ::operator-() const {
  RatFunZ f = *this;
  f.num_ = -f.num_;
  return f;
}

RatFunZ& RatFunZ::operator+=(const RatFunZ& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    if (den_.is_constant()) return *this;
    normalize();
    return *this;
  }
  ZPoly g = ZPoly::gcd(den_, o.den_);
  if (g.is_constant()) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
    if (num_.is_zero()) den_ = ZPoly(ScalarQ(1L));
    return *this;
  }
  ZPoly da = ZPoly::divmod(den_, g).first;
  ZPoly db = ZPoly::divmod(o.den_, g).first;
  ZPoly t = num_ * db + o.num_ * da;
  if (t.is_zero()) return *this = RatFunZ();
  ZPoly h = ZPoly::gcd(t, g);
  if (!h.is_constant()) {
    t = ZPoly::divmod(t, h).first;
    g = ZPoly::divmod(g, h).first;
  }
  num_ = std::move(t);
  den_ = da * db * g;
  return *this;
}

RatFunZ& RatFunZ::operator-=(const RatFunZ& o) { return *this += -o; }

RatFunZ operator*(const RatFunZ& a, const RatFunZ& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.is_constant()) {
    RatFunZ r = b;
    r.num_ = r.num_ * a.num_[0];
    return r;
  }
  if (b.is_constant()) {
    RatFunZ r = a;
    r.num_ = r.num_ * b.num_[0];
    return r;
  }
  ZPoly an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
  ZPoly g1 = ZPoly::gcd(an, bd);
  if (!g1.is_constant()) {
    an = ZPoly::divmod(an, g1).first;
    bd = ZPoly::divmod(bd, g1).first;
  }
  ZPoly g2 = ZPoly::gcd(bn, ad);
  if (!g2.is_constant()) {
    bn = ZPoly::divmod(bn, g2).first;
    ad = ZPoly::divmod(ad, g2).first;
  }
  RatFunZ r;
  r.num_ = an * bn;
  r.den_ = ad * bd;
  if (!r.den_.lead().is_one()) {
    ScalarQ inv = r.den_.lead().inverse();
    r.num_ = r.num_ * inv;
    r.den_ = r.den_ * inv;
  }
  return r;
}

RatFunZ& RatFunZ::operator*=(const RatFunZ& o) { return *this = *this * o; }

RatFunZ operator/(const RatFunZ& a, const RatFunZ& b) { return a * b.inverse(); }

RatFunZ& RatFunZ::operator/=(const RatFunZ& o) { return *this = *this / o; }

RatFunZ RatFunZ::inverse() const {
  if (is_zero()) throw std::domain_error("RatFunZ: inverse of zero");
  RatFunZ r;
  r.num_ = den_;
  r.den_ = num_;
  if (!r.den_.lead().is_one()) {
    ScalarQ inv = r.den_.lead().inverse();
    r.num_ = r.num_ * inv;
    r.den_ = r.den_ * inv;
  }
  return r;
}

RatFunZ RatFunZ::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  RatFunZ result(1L);
  RatFunZ base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

int RatFunZ::order_at_zero() const {
  if (is_zero()) throw std::domain_error("RatFunZ::order_at_zero: zero function");
  return num_.valuation() - den_.valuation();
}

int RatFunZ::degree_at_infinity() const {
  if (is_zero()) throw std::domain_error("RatFunZ::degree_at_infinity: zero function");
  return num_.degree() - den_.degree();
}

RatFunZ RatFunZ::scale(const ScalarQ& c) const {
  if (c.is_zero()) throw std::domain_error("RatFunZ::scale: zero factor");
  if (c.is_one() || is_constant()) return *this;
  RatFunZ r;
  r.num_ = num_.scale(c);
  r.den_ = den_.scale(c);
  ScalarQ inv = r.den_.lead().inverse();
  r.num_ = r.num_ * inv;
  r.den_ = r.den_ * inv;
  return r;
}

RatFunZ RatFunZ::invert_argument() const {
  if (is_constant() || is_zero()) return *this;
  const int dn = num_.degree();
  const int dd = den_.degree();
  ZPoly n = num_.reversed(dn);
  ZPoly d = den_.reversed(dd);
  if (dd > dn) {
    n = n.shift(dd - dn);
  } else {
    d = d.shift(dn - dd);
  }
  return RatFunZ(std::move(n), std::move(d));
}

RatFunZ RatFunZ::compose_mobius(const ScalarQ& alpha, const ScalarQ& beta, const ScalarQ& gamma,
                                const ScalarQ& delta) const {
  if (is_constant() || is_zero()) return *this;
  ZPoly top(std::vector<ScalarQ>{beta, alpha});
  ZPoly bottom(std::vector<ScalarQ>{delta, gamma});
  const int dn = num_.degree();
  const int dd = den_.degree();
  ZPoly n = homogenize(num_, dn, top, bottom);
  ZPoly d = homogenize(den_, dd, top, bottom);
  ZPoly extra(ScalarQ(1L));
  for (int i = 0; i < std::abs(dd - dn); ++i) extra = extra * bottom;
  if (dd > dn) {
    n = n * extra;
  } else {
    d = d * extra;
  }
  return RatFunZ(std::move(n), std::move(d));
}

ScalarQ RatFunZ::evaluate(const ScalarQ& z0) const {
  ScalarQ d = den_.evaluate(z0);
  if (d.is_zero()) throw std::domain_error("RatFunZ::evaluate: pole at z = " + z0.to_string());
  return num_.evaluate(z0) / d;
}

std::string RatFunZ::to_string() const {
  if (den_.is_constant()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

RatMatrix to_rat(const Matrix& m) {
  return m.map([](const ScalarQ& x) { return RatFunZ(x); });
}

RatMatrix times_z_power(const Matrix& m, int k) {
  const RatFunZ zk = RatFunZ::z_power(k);
  return m.map([&zk](const ScalarQ& x) { return x.is_zero() ? RatFunZ() : RatFunZ(x) * zk; });
}

RatMatrix scale_argument(const RatMatrix& m, const ScalarQ& c) {
  return m.map([&c](const RatFunZ& f) { return f.scale(c); });
}

namespace {

// Coefficient exponents of a Laurent polynomial scalar.
std::map<int, mpq_class> laurent_terms(const ScalarQ& s) {
  std::map<int, mpq_class> out;
  if (s.is_zero()) return out;
  const mpq_class d(s.den()[0]);
  for (int j = 0; j <= s.num().degree(); ++j) {
    if (s.num()[j] != 0) out[s.shift() + j] = mpq_class(s.num()[j]) / d;
  }
  return out;
}

std::vector<mpz_class> divisors(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> out;
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  return out;
}

// A rational root of a nonzero polynomial with rational coefficients.
std::optional<mpq_class> rational_root(const ZPoly& g) {
  mpz_class l = 1;
  for (const auto& c : g.coeffs()) l = lcm(l, c.constant_value()->get_den());
  std::vector<mpz_class> a;
  for (const auto& c : g.coeffs()) a.push_back(mpz_class(*c.constant_value() * l));
  int v = 0;
  while (a[v] == 0) ++v;
  if (v > 0) return mpq_class(0);
  const mpz_class limit("1000000000000");
  if (abs(a.front()) > limit || abs(a.back()) > limit) return std::nullopt;
  for (const auto& r : divisors(a.front())) {
    for (const auto& s : divisors(a.back())) {
      for (int sign : {1, -1}) {
        mpq_class x(r * sign, s);
        x.canonicalize();
        mpq_class acc = 0;
        for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * x + *it;
        if (acc == 0) return x;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::vector<ScalarQ>> split_q_power_roots(const ZPoly& input) {
  if (input.is_zero()) return std::nullopt;
  std::vector<ScalarQ> roots;
  ZPoly p = input.monic();
  for (int i = 0; i < p.valuation(); ++i) roots.emplace_back();
  p = p.shift(-p.valuation());
  while (p.degree() >= 1) {
    ScalarQ clear(1L);
    for (const auto& c : p.coeffs()) {
      if (!c.is_laurent_polynomial()) clear *= ScalarQ::from_parts(c.den(), IntPoly(mpz_class(1)));
    }
    std::vector<std::map<int, mpq_class>> terms;
    int bound = 0;
    for (const auto& c : p.coeffs()) {
      terms.push_back(laurent_terms(c * clear));
      for (const auto& [e, x] : terms.back()) bound = std::max(bound, std::abs(e));
    }
    bound = 2 * bound + 2;
    std::optional<ScalarQ> found;
    for (int step = 0; step <= 2 * bound && !found; ++step) {
      const int k = step % 2 == 0 ? step / 2 : -(step + 1) / 2;
      // p(y q^k) = sum_e q^e g_e(y); a root needs a common root of all g_e.
      std::map<int, std::vector<ScalarQ>> g;
      for (std::size_t i = 0; i < terms.size(); ++i) {
        for (const auto& [e, x] : terms[i]) {
          auto& v = g[e + k * static_cast<int>(i)];
          v.resize(terms.size());
          v[i] += ScalarQ(x);
        }
      }
      ZPoly common;
      for (auto& [e, v] : g) common = ZPoly::gcd(common, ZPoly(v));
      if (common.degree() < 1) continue;
      if (auto c = rational_root(common)) found = ScalarQ(*c) * ScalarQ::q_power(k);
    }
    if (!found) return std::nullopt;
    auto [quot, rem] = ZPoly::divmod(p, ZPoly(std::vector<ScalarQ>{-*found, ScalarQ(1L)}));
    if (!rem.is_zero()) return std::nullopt;
    roots.push_back(*found);
    p = quot;
  }
  return roots;
}

}  // namespace qlw
