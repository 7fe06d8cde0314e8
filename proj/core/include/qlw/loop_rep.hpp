#pragma once

#include <json.hpp>

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qlw/matrix.hpp"
#include "qlw/report.hpp"
#include "qlw/scalar.hpp"

namespace qlw {

/// Integer weights, one per basis vector; K acts by q^weight.
struct WeightDecomposition {
  std::vector<int> weights;

  std::size_t dim() const { return weights.size(); }
  /// Basis indices of weight w, in basis order.
  std::vector<std::size_t> indices_of(int w) const;
  /// Distinct weights, descending.
  std::vector<int> distinct() const;
};

/// A finite-dimensional type-I representation of the quantum loop algebra
/// of sl2 by exact matrices.
///
/// Modes E_k, F_k are stored for |k| <= mode_radius; the relations are
/// certified on the window [k_min, k_max]. psi_plus[r] = psi+_r and
/// psi_minus[r] = psi-_{-r} for 0 <= r <= r_max; h_plus[r] = H_r and
/// h_minus[r] = H_{-r} for 1 <= r <= r_max, with index 0 holding H_0.
struct LoopRep {
  ScalarQ q = ScalarQ::q();
  WeightDecomposition space;
  Matrix K;
  Matrix K_inv;
  int k_min = -3;
  int k_max = 3;
  int mode_radius = 0;
  std::size_t r_max = 0;
  std::map<int, Matrix> E;
  std::map<int, Matrix> F;
  std::vector<Matrix> psi_plus;
  std::vector<Matrix> psi_minus;
  std::vector<Matrix> h_plus;
  std::vector<Matrix> h_minus;
  nlohmann::json meta = nlohmann::json::object();

  std::size_t dim() const { return space.dim(); }
  const Matrix& e(int k) const;
  const Matrix& f(int k) const;
  /// diag(weights).
  Matrix h0() const;
  Matrix identity() const { return Matrix::identity(dim()); }
};

/// The generators E_0, F_0, F_1, E_{-1} from which every other mode is
/// generated.
struct LoopSeeds {
  Matrix E0;
  Matrix F0;
  Matrix F1;
  Matrix Em1;
};

struct RepOptions {
  int k_min = -3;
  int k_max = 3;
  /// 0 selects 2 * dim + 8.
  std::size_t r_max = 0;
};

/// Raised when a construction fails its relation check.
class RelationError : public std::runtime_error {
 public:
  RelationError(const std::string& what, Report report)
      : std::runtime_error(what), report_(std::move(report)) {}
  const Report& report() const { return report_; }

 private:
  Report report_;
};

/// Kac-Moody (Chevalley) generators of the affine algebra acting on V.
/// Index 1 is the finite node, index 0 the affine node.
struct KMGenerators {
  Matrix E0, F0, E1, F1;
  Matrix K0, K1;
  std::vector<int> h0, h1;
};

/// Builds a representation from its seeds: generates modes with
/// E_{k+1} = [H_1, E_k]/[2], E_{k-1} = [H_{-1}, E_k]/[2],
/// F_{k+1} = -[H_1, F_k]/[2], F_{k-1} = -[H_{-1}, F_k]/[2], where
/// H_1 = K^-1 [E_0, F_1] and H_{-1} = K [E_{-1}, F_0]; fills the psi and H
/// caches; throws RelationError unless every relation holds.
LoopRep build_from_seeds(const ScalarQ& q, const std::vector<int>& weights, const LoopSeeds& seeds,
                         const RepOptions& options = {}, nlohmann::json meta = nlohmann::json::object());

/// The evaluation module L_n(a) on the basis m(0..n).
LoopRep eval_module(int n, const ScalarQ& a, const RepOptions& options = {}, const ScalarQ& q = ScalarQ::q());

/// Regenerates all modes from the seeds of rep for the window [k_min, k_max].
LoopRep generate_modes(const LoopRep& rep, int k_min, int k_max);

/// Verifies the loop relations on the stored window and the affine Serre
/// relations of the Kac-Moody generators.
Report check_relations(const LoopRep& rep);

/// Kac-Moody generators from loop modes: E1 = E_0, F1 = F_0, E0 = K^-1 F_1, F0 = E_{-1} K,
/// K1 = K, K0 = K^-1. Throws RelationError if the Kac-Moody relations fail.
KMGenerators beck_km_generators(const LoopRep& rep);
Report check_km_relations(const KMGenerators& km, const ScalarQ& q);
/// Inverse dictionary.
LoopSeeds seeds_from_km(const KMGenerators& km);

/// X_k -> zeta^k X_k for X in {E, F, psi}.
LoopRep shift_twist(const LoopRep& rep, const ScalarQ& zeta);

LoopRep direct_sum(const LoopRep& a, const LoopRep& b);

/// The representation of the algebra at parameter 1/q on the same space
/// with E'_k = E_{-k}, F'_k = F_{-k}, K' = K^-1. Its psi+ series is the
/// psi- series of rep read at 1/z.
LoopRep omega_mirror(const LoopRep& rep);

/// Reads the seeds of a representation.
LoopSeeds seeds_of(const LoopRep& rep);

}  // namespace qlw
