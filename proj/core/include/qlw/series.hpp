#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qlw/matrix.hpp"
#include "qlw/ratfun.hpp"

namespace qlw {

/// Expansion point of a series. The local parameter is u = 1/z at
/// infinity and u = z at zero.
enum class Anchor { infinity, zero };

/// Truncated Laurent series sum_k coeffs[k] u^(offset + k).
struct LaurentSeries {
  Anchor anchor = Anchor::infinity;
  int offset = 0;
  std::vector<ScalarQ> coeffs;

  std::size_t order() const { return coeffs.size(); }
  /// Coefficient of u^e; zero below the offset. Throws std::out_of_range
  /// beyond the known coefficients.
  ScalarQ at(int e) const;
};

/// Thrown when a limit is requested at a point where the function still
/// has a pole.
class PoleRemains : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The first `order` coefficients of the Laurent expansion of f at the
/// anchor, starting from its leading exponent. The zero function expands
/// to an all-zero series with offset 0.
LaurentSeries expand(const RatFunZ& f, Anchor anchor, std::size_t order);

/// Coefficients of u^lo, ..., u^(hi-1) of the expansion of f.
std::vector<ScalarQ> expand_range(const RatFunZ& f, Anchor anchor, int lo, int hi);

/// Reduced rational function of least degree whose expansion reproduces
/// every supplied coefficient. Denominator degrees 1, 2, 4, ... up to the
/// budget (order - guard - 1)/2 are tried; each candidate is re-expanded
/// and compared against the full series. Zero and terminating series
/// (at least `guard` trailing zeros) are returned verbatim. Returns
/// nullopt when no candidate within the budget fits.
std::optional<RatFunZ> pade_reconstruct(const LaurentSeries& s, std::size_t guard = 8);

/// Value of z^k f(z) at the anchor; throws PoleRemains if it is infinite.
ScalarQ limit_with_prefactor(const RatFunZ& f, Anchor anchor, int k);

/// Truncated power series sum_k coeffs[k] u^k with square matrix
/// coefficients.
struct MatrixSeries {
  Anchor anchor = Anchor::infinity;
  std::size_t dim = 0;
  std::vector<Matrix> coeffs;

  static MatrixSeries identity(Anchor anchor, std::size_t dim, std::size_t order);
  static MatrixSeries zero(Anchor anchor, std::size_t dim, std::size_t order);
  std::size_t order() const { return coeffs.size(); }
  LaurentSeries entry(std::size_t i, std::size_t j) const;
  bool operator==(const MatrixSeries& o) const { return anchor == o.anchor && coeffs == o.coeffs; }
};

/// Truncated product; the order is the smaller of the two.
MatrixSeries operator*(const MatrixSeries& a, const MatrixSeries& b);
MatrixSeries operator+(const MatrixSeries& a, const MatrixSeries& b);
MatrixSeries operator-(const MatrixSeries& a, const MatrixSeries& b);
/// Left multiplication by a constant matrix.
MatrixSeries operator*(const Matrix& m, const MatrixSeries& s);
/// Multiplies coefficient k by c^k, i.e. f(u) -> f(c u).
MatrixSeries scale_parameter(const MatrixSeries& s, const ScalarQ& c);
/// Multiplies by u^k (k >= 0), keeping the order.
MatrixSeries shift(const MatrixSeries& s, int k);
/// Inverse of a series with invertible constant term.
MatrixSeries inverse(const MatrixSeries& s);
/// s^(n) = s^n / [n]! in the parameter q.
MatrixSeries divided_power(const MatrixSeries& s, unsigned n, const ScalarQ& q);
/// log of a series with constant term 1 whose coefficients commute.
MatrixSeries log_commuting(const MatrixSeries& s);
/// exp of a series with zero constant term whose coefficients commute.
MatrixSeries exp_commuting(const MatrixSeries& s);

/// Entrywise reconstruction; nullopt if any entry fails.
std::optional<RatMatrix> pade_reconstruct(const MatrixSeries& s, std::size_t guard = 8);
/// Entrywise expansion of a matrix function regular at the anchor:
/// coefficients of u^0 .. u^(order-1).
MatrixSeries expand(const RatMatrix& f, Anchor anchor, std::size_t order);

}  // namespace qlw
