#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qlw/dense_matrix.hpp"
#include "qlw/matrix.hpp"
#include "qlw/scalar.hpp"

namespace qlw {

/// Polynomial in the spectral variable z with ScalarQ coefficients;
/// coefficient i multiplies z^i and the vector is kept trimmed.
class ZPoly {
 public:
  ZPoly() = default;
  explicit ZPoly(const ScalarQ& c);
  explicit ZPoly(std::vector<ScalarQ> coeffs);
  static ZPoly monomial(const ScalarQ& c, int degree);

  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  /// True for c * z^k.
  bool is_monomial() const;
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  int valuation() const;
  const ScalarQ& operator[](int i) const;
  const ScalarQ& lead() const { return c_.back(); }
  const std::vector<ScalarQ>& coeffs() const { return c_; }

  ZPoly operator-() const;
  ZPoly& operator+=(const ZPoly& o);
  ZPoly& operator-=(const ZPoly& o);
  friend ZPoly operator+(ZPoly a, const ZPoly& b) { return a += b; }
  friend ZPoly operator-(ZPoly a, const ZPoly& b) { return a -= b; }
  friend ZPoly operator*(const ZPoly& a, const ZPoly& b);
  friend ZPoly operator*(ZPoly a, const ScalarQ& c);
  friend bool operator==(const ZPoly& a, const ZPoly& b) { return a.c_ == b.c_; }

  ZPoly monic() const;
  /// Multiplies by z^k (k may be negative when z^-k divides).
  ZPoly shift(int k) const;
  /// z^n p(1/z) for n >= degree.
  ZPoly reversed(int n) const;
  /// p(c z).
  ZPoly scale(const ScalarQ& c) const;
  ScalarQ evaluate(const ScalarQ& z0) const;

  /// Quotient and remainder over the field Q(q).
  static std::pair<ZPoly, ZPoly> divmod(const ZPoly& a, const ZPoly& b);
  /// Monic gcd (zero only when both inputs are zero).
  static ZPoly gcd(const ZPoly& a, const ZPoly& b);

  std::string to_string() const;

 private:
  void trim();
  std::vector<ScalarQ> c_;
};

/// Rational function of z over Q(q) in reduced form with monic denominator.
class RatFunZ {
 public:
  RatFunZ() : den_(ScalarQ(1L)) {}
  RatFunZ(long c) : RatFunZ(ScalarQ(c)) {}  // NOLINT(google-explicit-constructor)
  RatFunZ(const ScalarQ& c);                // NOLINT(google-explicit-constructor)
  explicit RatFunZ(ZPoly num);
  RatFunZ(ZPoly num, ZPoly den);

  /// z^k for any integer k.
  static RatFunZ z_power(int k);

  const ZPoly& num() const { return num_; }
  const ZPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_constant(); }

  RatFunZ operator-() const;
  RatFunZ& operator+=(const RatFunZ& o);
  RatFunZ& operator-=(const RatFunZ& o);
  RatFunZ& operator*=(const RatFunZ& o);
  RatFunZ& operator/=(const RatFunZ& o);
  friend RatFunZ operator+(RatFunZ a, const RatFunZ& b) { return a += b; }
  friend RatFunZ operator-(RatFunZ a, const RatFunZ& b) { return a -= b; }
  friend RatFunZ operator*(const RatFunZ& a, const RatFunZ& b);
  friend RatFunZ operator/(const RatFunZ& a, const RatFunZ& b);
  friend bool operator==(const RatFunZ& a, const RatFunZ& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  RatFunZ inverse() const;
  RatFunZ pow(long e) const;

  /// Order of vanishing at z = 0 (negative for a pole).
  int order_at_zero() const;
  /// deg num - deg den: the growth exponent at z = infinity.
  int degree_at_infinity() const;

  /// f(c z).
  RatFunZ scale(const ScalarQ& c) const;
  /// f(1/z).
  RatFunZ invert_argument() const;
  /// f((alpha t + beta)/(gamma t + delta)) as a function of t.
  RatFunZ compose_mobius(const ScalarQ& alpha, const ScalarQ& beta, const ScalarQ& gamma,
                         const ScalarQ& delta) const;
  /// Value at z = z0; throws std::domain_error at a pole.
  ScalarQ evaluate(const ScalarQ& z0) const;

  std::string to_string() const;

 private:
  void normalize();
  ZPoly num_;
  ZPoly den_;
};

using RatMatrix = DenseMatrix<RatFunZ>;

RatMatrix to_rat(const Matrix& m);
/// m * z^k.
RatMatrix times_z_power(const Matrix& m, int k);
RatMatrix scale_argument(const RatMatrix& m, const ScalarQ& c);

/// The roots of p, with multiplicity, when p splits into linear factors
/// z - c q^k with c rational; nullopt otherwise.
std::optional<std::vector<ScalarQ>> split_q_power_roots(const ZPoly& p);

}  // namespace qlw
