#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace qlw {

/// Dense univariate polynomial with arbitrary-precision integer
/// coefficients. Coefficient i multiplies q^i; the vector is kept trimmed
/// so the zero polynomial has no coefficients.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(const mpz_class& c);
  explicit IntPoly(std::vector<mpz_class> coeffs);

  static IntPoly monomial(const mpz_class& c, int degree);

  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  /// Index of the lowest nonzero coefficient; 0 for the zero polynomial.
  int valuation() const;

  /// Coefficient of q^i; zero outside the stored range.
  const mpz_class& operator[](int i) const;
  const mpz_class& lead() const { return c_.back(); }
  std::span<const mpz_class> coeffs() const { return c_; }

  /// Nonnegative gcd of all coefficients (0 for the zero polynomial).
  mpz_class content() const;
  IntPoly primitive_part() const;

  IntPoly shift_up(int k) const;
  IntPoly shift_down(int k) const;
  /// q^deg * p(1/q).
  IntPoly reversed() const;

  IntPoly operator-() const;
  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  IntPoly& operator*=(const mpz_class& c);

  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(IntPoly a, const mpz_class& c) { return a *= c; }
  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

  /// Divides every coefficient by c; c must divide each one exactly.
  IntPoly divexact(const mpz_class& c) const;
  /// Exact polynomial quotient a / b; throws std::domain_error if b does
  /// not divide a over the integers.
  static IntPoly divexact(const IntPoly& a, const IntPoly& b);
  /// Primitive gcd with positive leading coefficient (gcd over Q[q] up to
  /// units). gcd(0, 0) is 0.
  static IntPoly gcd(const IntPoly& a, const IntPoly& b);

  mpq_class evaluate(const mpq_class& x) const;

  std::string to_string(const std::string& var = "q") const;

 private:
  void trim();
  std::vector<mpz_class> c_;
};

}  // namespace qlw
