#pragma once

#include "qlw/report.hpp"
#include "qlw/scalar.hpp"

namespace qlw {

/// Quantum integer [n] = (q^n - q^-n)/(q - q^-1) in the parameter q.
ScalarQ qint(long n, const ScalarQ& q = ScalarQ::q());

/// [n]! = [n][n-1]...[1]; throws std::invalid_argument for n < 0.
ScalarQ qfactorial(long n, const ScalarQ& q = ScalarQ::q());

/// Gaussian binomial [n][n-1]...[n-k+1]/[k]! for any integer n.
/// Throws std::invalid_argument for k < 0.
ScalarQ qbinom(long n, long k, const ScalarQ& q = ScalarQ::q());

/// Checks, for 0 <= r <= r_max and r <= y <= y_max, the expansion
///   [y+l, l] = sum_j q^{-(l-j)y + lj} [l, j][y, j]      (0 <= l <= r),
/// the alternating sum
///   sum_l (-1)^l q^{l(y-r+1)} [r, l][y+l, l] = (-1)^r q^{r(y+1)} [y, r],
/// and the coefficientwise reduction between the two.
Report verify_qpascal_identities(int r_max, int y_max);

}  // namespace qlw
