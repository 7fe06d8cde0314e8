#include "qlw/ktheory.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "qlw/dense_matrix.hpp"
#include "qlw/io.hpp"

namespace qlw {

using nlohmann::json;

namespace {

ZPoly linear_product(const std::vector<ScalarQ>& roots) {
  ZPoly p(ScalarQ(1L));
  for (const auto& r : roots) p = p * ZPoly(std::vector<ScalarQ>{-r, ScalarQ(1L)});
  return p;
}

mpz_class binomial(long n, long k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return b;
}

// The single term of a signed monomial, inverted.
LaurentPoly invert_term(const LaurentPoly& p) {
  if (p.terms().size() != 1) throw std::domain_error("expected a single signed monomial");
  const auto& [m, c] = *p.terms().begin();
  return LaurentPoly(m.inverse(), 1 / c);
}

}  // namespace

AbelianCharacter AbelianCharacter::operator+(const AbelianCharacter& o) const {
  AbelianCharacter out = *this;
  out.zeros.insert(out.zeros.end(), o.zeros.begin(), o.zeros.end());
  out.poles.insert(out.poles.end(), o.poles.begin(), o.poles.end());
  return out;
}

RatFunZ AbelianCharacter::r() const { return RatFunZ(linear_product(zeros), linear_product(poles)); }

RatFunZ psi_eigen(const AbelianCharacter& ch, const ScalarQ& q) {
  const RatFunZ r = ch.r();
  return RatFunZ(q.pow(-ch.degree())) * r.scale(q.pow(2)) / r;
}

ScalarQ lattice_eigen(const AbelianCharacter& ch, int sign, const ScalarQ& q) {
  ScalarQ v = (sign > 0 ? -q : q).pow(ch.degree());
  for (const auto& b : ch.poles) v *= b;
  for (const auto& a : ch.zeros) v /= a;
  return v;
}

Monomial Monomial::variable(const std::string& name, long e) {
  Monomial m;
  if (e != 0) m.e_[name] = e;
  return m;
}

Monomial Monomial::parse(std::string_view text) {
  Monomial out;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("bad monomial \"" + std::string(text) + "\": " + why);
  };
  skip();
  if (i == text.size()) fail("empty");
  while (true) {
    skip();
    if (i < text.size() && text[i] == '1' && (i + 1 == text.size() || !std::isalnum(static_cast<unsigned char>(text[i + 1])))) {
      ++i;
    } else {
      std::size_t start = i;
      if (i >= text.size() || !(std::isalpha(static_cast<unsigned char>(text[i])) || text[i] == '_')) fail("expected a variable");
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
      std::string name(text.substr(start, i - start));
      long e = 1;
      skip();
      if (i < text.size() && text[i] == '^') {
        ++i;
        skip();
        bool paren = i < text.size() && text[i] == '(';
        if (paren) ++i;
        std::size_t s = i;
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == s || (i == s + 1 && !std::isdigit(static_cast<unsigned char>(text[s])))) fail("expected an integer exponent");
        e = std::stol(std::string(text.substr(s, i - s)));
        if (paren) {
          if (i >= text.size() || text[i] != ')') fail("unbalanced parenthesis");
          ++i;
        }
      }
      out = out * variable(name, e);
    }
    skip();
    if (i == text.size()) break;
    if (text[i] != '*') fail("expected '*'");
    ++i;
  }
  return out;
}

long Monomial::exponent(const std::string& name) const {
  auto it = e_.find(name);
  return it == e_.end() ? 0 : it->second;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial m = *this;
  for (const auto& [k, v] : o.e_) {
    long& x = m.e_[k];
    x += v;
    if (x == 0) m.e_.erase(k);
  }
  return m;
}

Monomial Monomial::inverse() const { return pow(-1); }

Monomial Monomial::pow(long k) const {
  Monomial m;
  if (k == 0) return m;
  for (const auto& [name, v] : e_) m.e_[name] = v * k;
  return m;
}

std::string Monomial::to_string() const {
  std::ostringstream os;
  os << "q^" << exponent("q");
  for (const auto& [name, v] : e_) {
    if (name == "q") continue;
    os << " * " << name;
    if (v != 1) os << "^" << v;
  }
  return os.str();
}

LaurentPoly::LaurentPoly(const Monomial& m, const mpq_class& c) {
  if (c != 0) t_[m] = c;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly p = *this;
  for (auto& [m, c] : p.t_) c = -c;
  return p;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [m, c] : o.t_) {
    mpq_class& x = t_[m];
    x += c;
    if (x == 0) t_.erase(m);
  }
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly out;
  for (const auto& [ma, ca] : a.t_) {
    for (const auto& [mb, cb] : b.t_) out += LaurentPoly(ma * mb, ca * cb);
  }
  return out;
}

std::string LaurentPoly::to_string() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : t_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.get_str() << ") * " << m.to_string();
  }
  return os.str();
}

EquivClass::EquivClass(std::vector<Monomial> r) : roots(std::move(r)) { std::sort(roots.begin(), roots.end()); }

Monomial EquivClass::det() const {
  Monomial d;
  for (const auto& r : roots) d = d * r;
  return d;
}

EquivClass EquivClass::twist(long k) const {
  std::vector<Monomial> r;
  for (const auto& x : roots) r.push_back(x * Monomial::q_power(k));
  return EquivClass(std::move(r));
}

EquivClass EquivClass::operator+(const EquivClass& o) const {
  std::vector<Monomial> r = roots;
  r.insert(r.end(), o.roots.begin(), o.roots.end());
  return EquivClass(std::move(r));
}

std::vector<LaurentPoly> wedge_u(const EquivClass& e) {
  std::vector<LaurentPoly> c{LaurentPoly::constant(1)};
  for (const auto& x : e.roots) {
    std::vector<LaurentPoly> next(c.size() + 1);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i] += c[i];
      next[i + 1] += c[i] * LaurentPoly(x);
    }
    c = std::move(next);
  }
  return c;
}

FactoredFunction FactoredFunction::operator*(const FactoredFunction& o) const {
  FactoredFunction out = *this;
  out.prefactor = prefactor * o.prefactor;
  for (const auto& [m, e] : o.factors) {
    long& x = out.factors[m];
    x += e;
    if (x == 0) out.factors.erase(m);
  }
  return out;
}

FactoredFunction FactoredFunction::inverse() const {
  FactoredFunction out;
  out.prefactor = invert_term(prefactor);
  for (const auto& [m, e] : factors) out.factors[m] = -e;
  return out;
}

std::vector<LaurentPoly> FactoredFunction::series_at_infinity(std::size_t order) const {
  std::vector<LaurentPoly> s(order);
  if (order == 0) return s;
  s[0] = prefactor;
  for (const auto& [m, e] : factors) {
    // (1 - m u)^e in u = 1/z.
    std::vector<LaurentPoly> f(order);
    for (std::size_t k = 0; k < order; ++k) {
      const long kk = static_cast<long>(k);
      if (e >= 0) {
        if (kk > e) break;
        mpq_class c(binomial(e, kk));
        if (k % 2 == 1) c = -c;
        f[k] = LaurentPoly(m.pow(kk), c);
      } else {
        f[k] = LaurentPoly(m.pow(kk), mpq_class(binomial(-e + kk - 1, kk)));
      }
    }
    std::vector<LaurentPoly> next(order);
    for (std::size_t i = 0; i < order; ++i) {
      if (s[i].is_zero()) continue;
      for (std::size_t j = 0; i + j < order; ++j) {
        if (!f[j].is_zero()) next[i + j] += s[i] * f[j];
      }
    }
    s = std::move(next);
  }
  return s;
}

long FactoredFunction::pole_order_at_zero() const {
  long total = 0;
  for (const auto& [m, e] : factors) total += e;
  return total;
}

LaurentPoly FactoredFunction::limit_at_zero(long k) const {
  if (k != pole_order_at_zero()) {
    throw std::domain_error("limit_at_zero: prefactor z^" + std::to_string(k) + " does not balance a pole of order " +
                            std::to_string(pole_order_at_zero()));
  }
  // (1 - m/z)^e z^e -> (-m)^e.
  LaurentPoly v = prefactor;
  for (const auto& [m, e] : factors) v = v * LaurentPoly(m.pow(e), e % 2 == 0 ? 1 : -1);
  return v;
}

std::string FactoredFunction::to_string() const {
  std::ostringstream os;
  os << prefactor.to_string();
  for (const auto& [m, e] : factors) os << " * (1 - " << m.to_string() << " / z)^" << e;
  return os.str();
}

FactoredFunction wedge_over_z(const VirtualClass& c, const Monomial& s) {
  FactoredFunction f;
  for (const auto& x : c.positive.roots) f = f * FactoredFunction{LaurentPoly::constant(1), {{s * x, 1}}};
  for (const auto& x : c.negative.roots) f = f * FactoredFunction{LaurentPoly::constant(1), {{s * x, -1}}};
  return f;
}

void validate_ade(const std::vector<std::vector<int>>& cartan) {
  const std::size_t n = cartan.size();
  if (n == 0) throw std::invalid_argument("Cartan matrix is empty");
  DenseMatrix<ScalarQ> m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (cartan[i].size() != n) throw std::invalid_argument("Cartan matrix is not square");
    for (std::size_t j = 0; j < n; ++j) {
      const int a = cartan[i][j];
      if (i == j && a != 2) throw std::invalid_argument("Cartan matrix must have 2 on the diagonal");
      if (i != j && a != 0 && a != -1) throw std::invalid_argument("off-diagonal Cartan entries must be 0 or -1");
      if (a != cartan[j][i]) throw std::invalid_argument("Cartan matrix must be symmetric (simply laced)");
      m(i, j) = ScalarQ(static_cast<long>(a));
    }
  }
  // Finite type: every leading principal minor is positive.
  for (std::size_t k = 1; k <= n; ++k) {
    DenseMatrix<ScalarQ> minor(k, k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) minor(i, j) = m(i, j);
    }
    auto d = determinant(minor).constant_value();
    if (!d || *d <= 0) throw std::invalid_argument("Cartan matrix is not of finite ADE type");
  }
}

VirtualClass complex_Ck(const QuiverInstance& inst, std::size_t k) {
  validate_ade(inst.cartan);
  const std::size_t n = inst.cartan.size();
  if (k >= n) throw std::out_of_range("node index out of range");
  if (inst.V.size() != n || inst.W.size() != n) throw std::invalid_argument("need one V and one W class per node");
  EquivClass middle = inst.W[k];
  for (std::size_t l = 0; l < n; ++l) {
    if (inst.cartan[k][l] == -1) middle = middle + inst.V[l];
  }
  return {middle.twist(-1), inst.V[k].twist(-2) + inst.V[k]};
}

FactoredFunction nakajima_psi(const VirtualClass& ck) {
  FactoredFunction pre{LaurentPoly(Monomial::q_power(ck.rank())), {}};
  return pre * wedge_over_z(ck, Monomial::q_power(-1)) * wedge_over_z(ck, Monomial::q_power(1)).inverse();
}

FactoredFunction nakajima_cp(const VirtualClass& ck) { return wedge_over_z(ck, Monomial::q_power(1)); }

LineComparison nakajima_lattice(const QuiverInstance& inst, std::size_t k) {
  const VirtualClass ck = complex_Ck(inst, k);
  const long rk = ck.rank();
  LineComparison out;
  // C = lim z^rk P+(z) = (-q)^rk det C_k; the line is (-1)^rk q^rk C^-1.
  const LaurentPoly c = nakajima_cp(ck).limit_at_zero(rk);
  out.from_limit = LaurentPoly(Monomial::q_power(rk), rk % 2 == 0 ? 1 : -1) * invert_term(c);
  Monomial formula = Monomial::q_power(rk) * inst.W[k].det().inverse() * inst.V[k].det().pow(2);
  for (std::size_t l = 0; l < inst.cartan.size(); ++l) {
    if (inst.cartan[k][l] == -1) formula = formula * inst.V[l].det().inverse();
  }
  out.from_formula = formula;
  out.agree = out.from_limit == LaurentPoly(formula);
  return out;
}

Report verify_nakajima_node(const QuiverInstance& inst, std::size_t k, std::size_t order) {
  Report report;
  const VirtualClass ck = complex_Ck(inst, k);
  long expected = static_cast<long>(inst.W[k].rank()) - 2 * static_cast<long>(inst.V[k].rank());
  for (std::size_t l = 0; l < inst.cartan.size(); ++l) {
    if (inst.cartan[k][l] == -1) expected += static_cast<long>(inst.V[l].rank());
  }
  report.add("ktheory-rank", "rank C_k = w_k - 2 v_k + sum_{a_kl = -1} v_l", ck.rank() == expected,
             {{"node", k}, {"rank", ck.rank()}, {"expected", expected}});

  const FactoredFunction psi = nakajima_psi(ck);
  report.add("ktheory-psi-infinity", "psi_k(z) takes the value q^rank at z = infinity",
             psi.prefactor == LaurentPoly(Monomial::q_power(ck.rank())), {{"node", k}, {"psi", psi.to_string()}});

  // P(q^2 z) = psi_bar(z) P(z) with psi_bar = q^-rank psi, coefficientwise in 1/z.
  const auto p = nakajima_cp(ck).series_at_infinity(order);
  FactoredFunction bar = psi;
  bar.prefactor = LaurentPoly::constant(1);
  const auto b = bar.series_at_infinity(order);
  json bad = nullptr;
  for (std::size_t n = 1; n < order && bad.is_null(); ++n) {
    LaurentPoly lhs = p[n] * LaurentPoly(Monomial::q_power(-2 * static_cast<long>(n))) - p[n];
    LaurentPoly rhs;
    for (std::size_t j = 1; j <= n; ++j) rhs += b[j] * p[n - j];
    if (!(lhs == rhs)) bad = {{"node", k}, {"coefficient", n}, {"difference", (lhs - rhs).to_string()}};
  }
  report.add("ktheory-difference-equation", "wedge_{-q/z} C_k solves P(q^2 z) = psi_bar(z) P(z) coefficientwise",
             bad.is_null(), bad.is_null() ? json{{"node", k}, {"order", order}} : bad);

  const LineComparison line = nakajima_lattice(inst, k);
  json w = {{"node", k},
            {"line", line.from_formula.to_string()},
            {"from_limit", line.from_limit.to_string()},
            {"from_formula", LaurentPoly(line.from_formula).to_string()}};
  report.add("ktheory-det-line", "the lattice operator acts by det(C_k)^*, by the limit and by the product formula",
             line.agree, w);
  return report;
}

QuiverInstance quiver_from_json(const json& j) {
  if (!j.is_object() || !j.contains("cartan") || !j["cartan"].is_array()) {
    throw InputError("quiver instance needs a \"cartan\" matrix");
  }
  QuiverInstance inst;
  for (const auto& row : j["cartan"]) {
    if (!row.is_array()) throw InputError("Cartan rows must be arrays");
    std::vector<int> r;
    for (const auto& a : row) {
      if (!a.is_number_integer()) throw InputError("Cartan entries must be integers");
      r.push_back(a.get<int>());
    }
    inst.cartan.push_back(std::move(r));
  }
  try {
    validate_ade(inst.cartan);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  const std::size_t n = inst.cartan.size();
  auto classes = [&](const char* key) {
    std::vector<EquivClass> out(n);
    if (!j.contains(key)) return out;
    const json& c = j[key];
    if (!c.is_array() || c.size() != n) throw InputError(std::string("\"") + key + "\" needs one root list per node");
    for (std::size_t i = 0; i < n; ++i) {
      if (!c[i].is_array()) throw InputError(std::string("\"") + key + "\" entries must be arrays of monomials");
      std::vector<Monomial> roots;
      for (const auto& r : c[i]) {
        if (!r.is_string()) throw InputError("roots must be monomial strings");
        try {
          roots.push_back(Monomial::parse(r.get<std::string>()));
        } catch (const std::invalid_argument& e) {
          throw InputError(e.what());
        }
      }
      out[i] = EquivClass(std::move(roots));
    }
    return out;
  };
  inst.V = classes("V");
  inst.W = classes("W");
  return inst;
}

}  // namespace qlw
