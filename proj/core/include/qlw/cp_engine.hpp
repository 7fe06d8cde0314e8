#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qlw/ktheory.hpp"
#include "qlw/loop_rep.hpp"
#include "qlw/matrix.hpp"
#include "qlw/ratfun.hpp"
#include "qlw/report.hpp"
#include "qlw/series.hpp"

namespace qlw {

/// A series that does not reconstruct to a rational function within the
/// available order.
class ReconstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Number of series coefficients used by default: 2 dim + 9, i.e. through
/// order 2 dim + 8.
std::size_t default_order(const LoopRep& rep);

/// rep with psi and H caches long enough for `order` coefficients.
LoopRep with_order(const LoopRep& rep, std::size_t order);

/// psi_bar+ = K^-1 psi+ (series at infinity) and psi_bar- = K psi- (series
/// at zero) as rational matrices. K psi_bar+ and K^-1 psi_bar- must be the
/// same function; throws ReconstructionError otherwise.
struct PsiBar {
  RatMatrix plus;
  RatMatrix minus;
};
PsiBar psi_bar(const LoopRep& rep);

/// plus[r] = H_r and minus[r] = H_{-r} from the logarithms of psi_bar;
/// index 0 holds H_0.
struct HModes {
  std::vector<Matrix> plus;
  std::vector<Matrix> minus;
};
HModes h_modes(const LoopRep& rep, std::size_t order);

/// P+(z) = exp(-sum q^n H_n / [n] z^-n) at infinity and
/// P-(z) = exp(-sum q^-n H_-n / [n] z^n) at zero.
struct CPSeries {
  MatrixSeries plus;
  MatrixSeries minus;
};
CPSeries cp_series(const LoopRep& rep, std::size_t order);

/// P(q^2 z) = psi_bar(z) P(z) coefficientwise for both series.
Report check_difference_equation(const LoopRep& rep, const CPSeries& cp);

/// Both sides of the straightening identity A(z) = P+(z) B(z), as series in
/// 1/z and as rational matrices.
struct Straightening {
  MatrixSeries A_series;
  MatrixSeries B_series;
  RatMatrix A;
  RatMatrix B;
  /// Nilpotency index of E_0 and the last nonzero divided power of F.
  unsigned N = 0;
  unsigned M = 0;
  Report report;
};
Straightening straightening_sides(const LoopRep& rep, std::size_t order);

/// P+ by Pade reconstruction and by A B^-1, and P- via the mirror.
struct CPRational {
  RatMatrix plus;
  RatMatrix plus_straightened;
  RatMatrix minus;
  Report report;
};
CPRational cp_rational(const LoopRep& rep, std::size_t order);

/// C = lim_{z -> 0} z^H0 P+(z), blockwise on weight spaces.
struct LimitConstant {
  Matrix C;
  Report report;
};
LimitConstant limit_constant(const LoopRep& rep, const CPRational& p);

/// Every check on the series, their rational forms, C and the commutation
/// of P+ with the modes.
Report verify_cp(const LoopRep& rep, std::size_t order = 0);

/// S1^-1 S0^-1 = (-q)^-H0 C.
Report verify_main_theorem(const LoopRep& rep, std::size_t order = 0);

/// Identities on Ker(E_{-1}) in each weight space of weight >= 0.
Report verify_kernel_identities(const LoopRep& rep, std::size_t order = 0);

/// The Euler-transformed series and its value at t = 1.
struct EulerResult {
  Report report;
  Matrix limit;
};
EulerResult euler_transform(const LoopRep& rep, std::size_t order = 0);

/// The lattice operator of the twist by zeta is zeta^-H0 times that of rep.
Report verify_shift_covariance(const LoopRep& rep, const ScalarQ& zeta);

/// Splits the diagonal of P+ into zeros and poles and compares psi and the
/// lattice operator with the abelian character predictions.
Report verify_eigenvalues(const LoopRep& rep, std::size_t order = 0);

}  // namespace qlw
