#pragma once

#include <vector>

#include "qlw/dense_matrix.hpp"
#include "qlw/scalar.hpp"

namespace qlw {

using Matrix = DenseMatrix<ScalarQ>;

/// diag(q^{w_i}) for integer weights w.
Matrix q_power_diagonal(const std::vector<int>& weights, const ScalarQ& q);

/// Entrywise substitution q -> 1/q.
Matrix substitute_inverse(const Matrix& m);

}  // namespace qlw
