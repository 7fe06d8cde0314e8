#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "qlw/loop_rep.hpp"
#include "qlw/matrix.hpp"
#include "qlw/report.hpp"

namespace qlw {

/// An invertible operator attached to a representation.
struct WeylOperator {
  Matrix matrix;
  /// "S0", "S1" or "L".
  std::string label;
  nlohmann::json source = nullptr;
};

/// sum_{n < dim} base^(n(n-1)/2) X^n / [n]!; the q-integers are taken in
/// `base`. Throws std::invalid_argument unless X^dim = 0.
Matrix q_exp(const Matrix& x, const ScalarQ& base);

/// exp_{q^-1}(q^-1 E K^-1) exp_{q^-1}(-F) exp_{q^-1}(q E K) diag(q^(w(w+1)/2)).
WeylOperator weyl_triple(const Matrix& e, const Matrix& f, const Matrix& k, const std::vector<int>& weights,
                         const ScalarQ& q = ScalarQ::q(), std::string label = "S");

/// The operator m(r) -> (-1)^(n-r) q^((n-r)(r+1)) m(n-r) on the basis m(0..n).
Matrix s_closed_form(int n, const ScalarQ& q = ScalarQ::q());

/// S0 from the affine node (E0, F0, K^-1, -weights) and S1 from the
/// finite node (E1, F1, K, weights) of the Kac-Moody generators.
std::pair<WeylOperator, WeylOperator> node_operators(const LoopRep& rep);

/// The lattice operator S0 S1.
WeylOperator lattice_operator(const LoopRep& rep);

/// Checks L E_k L^-1 = E_{k-2}, L F_k L^-1 = F_{k+2} and L H_k L^-1 = H_k on
/// the window, together with [L, psi] = 0 for the cached psi modes.
Report check_conjugation(const LoopRep& rep);

/// Weight behavior and determinant of S0, S1 and L, the closed form on
/// evaluation modules, and the conjugation checks.
Report verify_weyl(const LoopRep& rep);

}  // namespace qlw
