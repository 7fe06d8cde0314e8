#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "qlw/int_poly.hpp"

namespace qlw {

/// An element of Q(q), stored as q^shift * num(q) / den(q).
///
/// Canonical form: num and den have nonzero constant terms, are coprime
/// over Q[q], share no integer content, and den has a positive leading
/// coefficient. Zero is num = 0, den = 1, shift = 0. Two values are equal
/// iff their canonical forms coincide.
class ScalarQ {
 public:
  ScalarQ() : den_(mpz_class(1)) {}
  ScalarQ(long v);  // NOLINT(google-explicit-constructor)
  ScalarQ(const mpz_class& v);  // NOLINT(google-explicit-constructor)
  ScalarQ(const mpq_class& v);  // NOLINT(google-explicit-constructor)

  /// The formal variable q.
  static ScalarQ q();
  /// q^e.
  static ScalarQ q_power(int e);
  /// q^shift * num / den, normalized. Throws std::domain_error if den = 0.
  static ScalarQ from_parts(IntPoly num, IntPoly den, int shift = 0);

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return shift_ == 0 && num_.is_one() && den_.is_one(); }
  /// True when the value does not depend on q.
  bool is_constant() const { return shift_ == 0 && num_.is_constant() && den_.is_constant(); }
  /// True when the value is a Laurent polynomial in q with rational coefficients.
  bool is_laurent_polynomial() const { return den_.is_constant(); }
  /// True for c * q^k with c rational.
  bool is_monomial() const { return num_.is_constant() && den_.is_constant(); }
  std::optional<mpq_class> constant_value() const;

  int shift() const { return shift_; }
  const IntPoly& num() const { return num_; }
  const IntPoly& den() const { return den_; }

  ScalarQ operator-() const;
  ScalarQ& operator+=(const ScalarQ& o);
  ScalarQ& operator-=(const ScalarQ& o);
  ScalarQ& operator*=(const ScalarQ& o);
  ScalarQ& operator/=(const ScalarQ& o);

  friend ScalarQ operator+(ScalarQ a, const ScalarQ& b) { return a += b; }
  friend ScalarQ operator-(ScalarQ a, const ScalarQ& b) { return a -= b; }
  friend ScalarQ operator*(const ScalarQ& a, const ScalarQ& b);
  friend ScalarQ operator/(const ScalarQ& a, const ScalarQ& b);
  friend bool operator==(const ScalarQ& a, const ScalarQ& b) {
    return a.shift_ == b.shift_ && a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// Multiplicative inverse; throws std::domain_error on zero.
  ScalarQ inverse() const;
  ScalarQ pow(long e) const;

  /// The image under the field automorphism q -> 1/q.
  ScalarQ substitute_inverse() const;
  /// Value at q = q0; throws std::domain_error at a pole.
  mpq_class evaluate(const mpq_class& q0) const;

  /// Canonical sparse form: terms "c*q^e" joined by "+" with descending
  /// exponents; "(P)/(Q)" when the denominator is not 1.
  std::string to_string() const;
  /// Parses the canonical form and ordinary arithmetic expressions in q
  /// (+ - * / ^ with integer exponents, parentheses, integer and rational
  /// literals). Throws std::invalid_argument on malformed input.
  static ScalarQ parse(std::string_view text);

  std::size_t hash() const;

 private:
  void normalize();

  int shift_ = 0;
  IntPoly num_;
  IntPoly den_;
};

std::ostream& operator<<(std::ostream& os, const ScalarQ& s);

/// Specialization of q to a rational number. Rejects q0 in {0, 1, -1};
/// avoiding other values where the algebra degenerates is the caller's duty.
struct NumericQ {
  mpq_class value;
  static NumericQ checked(const mpq_class& q0);
};

}  // namespace qlw

template <>
struct std::hash<qlw::ScalarQ> {
  std::size_t operator()(const qlw::ScalarQ& s) const noexcept { return s.hash(); }
};
