#pragma once

#include <gmpxx.h>
#include <json.hpp>

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qlw/ratfun.hpp"
#include "qlw/report.hpp"
#include "qlw/scalar.hpp"

namespace qlw {

/// Eigenvalue data r(z) = prod (z - a_j) / prod (z - b_k) with invertible
/// zeros a_j and poles b_k.
struct AbelianCharacter {
  std::vector<ScalarQ> zeros;
  std::vector<ScalarQ> poles;

  long degree() const { return static_cast<long>(zeros.size()) - static_cast<long>(poles.size()); }
  /// Multiset union.
  AbelianCharacter operator+(const AbelianCharacter& o) const;
  /// r(z) as a reduced rational function.
  RatFunZ r() const;
};

/// q^(-deg r) r(q^2 z) / r(z).
RatFunZ psi_eigen(const AbelianCharacter& ch, const ScalarQ& q = ScalarQ::q());
/// (-sign q)^(m-n) prod b_k / prod a_j.
ScalarQ lattice_eigen(const AbelianCharacter& ch, int sign, const ScalarQ& q = ScalarQ::q());

/// Laurent monomial in q and named torus variables.
class Monomial {
 public:
  Monomial() = default;
  static Monomial variable(const std::string& name, long e = 1);
  static Monomial q_power(long e) { return variable("q", e); }
  /// Parses products such as "q^-1 * x1^2 * y" and "1".
  static Monomial parse(std::string_view text);

  long exponent(const std::string& name) const;
  const std::map<std::string, long>& exponents() const { return e_; }
  bool is_one() const { return e_.empty(); }

  Monomial operator*(const Monomial& o) const;
  Monomial inverse() const;
  Monomial pow(long k) const;

  /// "q^a * x1^b * ..." with q first and the exponent of q always shown.
  std::string to_string() const;

  auto operator<=>(const Monomial&) const = default;

 private:
  std::map<std::string, long> e_;
};

/// Finite rational combination of monomials.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(const Monomial& m, const mpq_class& c = 1);  // NOLINT(google-explicit-constructor)
  static LaurentPoly constant(const mpq_class& c) { return LaurentPoly(Monomial(), c); }

  bool is_zero() const { return t_.empty(); }
  const std::map<Monomial, mpq_class>& terms() const { return t_; }

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.t_ == b.t_; }

  std::string to_string() const;

 private:
  std::map<Monomial, mpq_class> t_;
};

/// A K-theory class by its Chern roots; roots are kept sorted.
struct EquivClass {
  std::vector<Monomial> roots;

  EquivClass() = default;
  explicit EquivClass(std::vector<Monomial> r);
  std::size_t rank() const { return roots.size(); }
  Monomial det() const;
  /// The class q^k E.
  EquivClass twist(long k) const;
  EquivClass operator+(const EquivClass& o) const;
  bool operator==(const EquivClass& o) const { return roots == o.roots; }
};

/// positive - negative.
struct VirtualClass {
  EquivClass positive;
  EquivClass negative;

  long rank() const { return static_cast<long>(positive.rank()) - static_cast<long>(negative.rank()); }
  Monomial det() const { return positive.det() * negative.det().inverse(); }
};

/// Coefficients of u^0 .. u^rank of wedge_u E = prod (1 + u x).
std::vector<LaurentPoly> wedge_u(const EquivClass& e);

/// prefactor * prod (1 - m / z)^(e_m).
struct FactoredFunction {
  LaurentPoly prefactor = LaurentPoly::constant(1);
  std::map<Monomial, long> factors;

  FactoredFunction operator*(const FactoredFunction& o) const;
  FactoredFunction inverse() const;
  bool operator==(const FactoredFunction& o) const { return prefactor == o.prefactor && factors == o.factors; }
  /// Coefficients of z^0 .. z^-(order-1).
  std::vector<LaurentPoly> series_at_infinity(std::size_t order) const;
  /// Sum of the exponents: the order of the pole at z = 0.
  long pole_order_at_zero() const;
  /// lim_{z -> 0} z^k f(z); requires k = pole_order_at_zero().
  LaurentPoly limit_at_zero(long k) const;
  std::string to_string() const;
};

/// wedge_{-s/z} C = prod (1 - s x / z)^(+-1) over the roots x of C.
FactoredFunction wedge_over_z(const VirtualClass& c, const Monomial& s);

/// A finite-type simply-laced quiver with classes V_k and W_k per node.
struct QuiverInstance {
  std::vector<std::vector<int>> cartan;
  std::vector<EquivClass> V;
  std::vector<EquivClass> W;
};

/// Throws std::invalid_argument unless the matrix is an ADE Cartan matrix.
void validate_ade(const std::vector<std::vector<int>>& cartan);

/// q^-1 (W_k + sum_{a_kl = -1} V_l) - q^-2 V_k - V_k, whose rank is
/// w_k - 2 v_k + sum_{a_kl = -1} v_l.
VirtualClass complex_Ck(const QuiverInstance& inst, std::size_t k);

/// q^rank wedge_{-1/(qz)} C / wedge_{-q/z} C.
FactoredFunction nakajima_psi(const VirtualClass& ck);
/// wedge_{-q/z} C, the solution of the difference equation.
FactoredFunction nakajima_cp(const VirtualClass& ck);

/// The determinant line det(C_k)^* by the limit and by the product formula.
struct LineComparison {
  LaurentPoly from_limit;
  Monomial from_formula;
  bool agree = false;
};
LineComparison nakajima_lattice(const QuiverInstance& inst, std::size_t k);

/// Runs the rank, difference-equation and determinant-line checks at node k.
Report verify_nakajima_node(const QuiverInstance& inst, std::size_t k, std::size_t order = 12);

/// {"cartan": [[...]], "V": [["y1", ...], ...], "W": [[...], ...]}.
QuiverInstance quiver_from_json(const nlohmann::json& j);

}  // namespace qlw
