#pragma once

#include <json.hpp>

#include <stdexcept>
#include <string>

#include "qlw/loop_rep.hpp"
#include "qlw/matrix.hpp"
#include "qlw/ratfun.hpp"
#include "qlw/scalar.hpp"
#include "qlw/series.hpp"

namespace qlw {

/// Malformed or inconsistent input data.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scalars serialize to their canonical string; parsing also accepts JSON
/// integers.
nlohmann::json scalar_to_json(const ScalarQ& s);
ScalarQ scalar_from_json(const nlohmann::json& j);

/// Row-major array of arrays of scalars.
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j, std::size_t dim);

/// {"num": [[e, "c"], ...], "den": [...]} with exponents descending.
nlohmann::json ratfun_to_json(const RatFunZ& f);
RatFunZ ratfun_from_json(const nlohmann::json& j);
nlohmann::json ratmatrix_to_json(const RatMatrix& m);

/// {"anchor": "inf" | "0", "offset": k, "coeffs": [...]}.
nlohmann::json series_to_json(const LaurentSeries& s);
LaurentSeries series_from_json(const nlohmann::json& j);

/// {"dim", "q", "weights", "K", "E": {"k": matrix}, "F": {...}, "meta"}
/// with the modes of the certified window.
nlohmann::json rep_to_json(const LoopRep& rep);
/// Builds a representation from E_0, F_0, F_1 and E_{-1} of the file,
/// regenerates the other modes and checks every stored mode against them.
/// Throws InputError on malformed data and RelationError when the
/// relations fail.
LoopRep rep_from_json(const nlohmann::json& j, const RepOptions& options = {});

}  // namespace qlw
