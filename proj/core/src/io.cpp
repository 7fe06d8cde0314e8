#include "qlw/io.hpp"

#include <string>

namespace qlw {

using nlohmann::json;

json scalar_to_json(const ScalarQ& s) { return s.to_string(); }

ScalarQ scalar_from_json(const json& j) {
  try {
    if (j.is_number_integer()) return ScalarQ(static_cast<long>(j.get<long long>()));
    if (j.is_string()) return ScalarQ::parse(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("bad scalar: ") + e.what());
  }
  throw InputError("bad scalar: expected a string or an integer, got " + j.dump());
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, std::size_t dim) {
  if (!j.is_array() || j.size() != dim) throw InputError("matrix must be an array of " + std::to_string(dim) + " rows");
  Matrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (!j[i].is_array() || j[i].size() != dim) throw InputError("matrix row must have " + std::to_string(dim) + " entries");
    for (std::size_t k = 0; k < dim; ++k) m(i, k) = scalar_from_json(j[i][k]);
  }
  return m;
}

namespace {

json zpoly_to_json(const ZPoly& p) {
  json out = json::array();
  for (int i = p.degree(); i >= 0; --i) {
    if (!p[i].is_zero()) out.push_back(json::array({i, scalar_to_json(p[i])}));
  }
  return out;
}

// Terms may carry negative exponents; they are collected into a Laurent
// polynomial returned as p(z) z^shift.
RatFunZ laurent_from_json(const json& j) {
  if (!j.is_array()) throw InputError("polynomial must be an array of [exponent, coefficient] pairs");
  RatFunZ out;
  for (const auto& term : j) {
    if (!term.is_array() || term.size() != 2 || !term[0].is_number_integer()) {
      throw InputError("polynomial term must be [exponent, coefficient]");
    }
    out += RatFunZ(scalar_from_json(term[1])) * RatFunZ::z_power(term[0].get<int>());
  }
  return out;
}

Anchor anchor_from_json(const json& j) {
  if (j == "inf") return Anchor::infinity;
  if (j == "0") return Anchor::zero;
  throw InputError("anchor must be \"inf\" or \"0\"");
}

}  // namespace

json ratfun_to_json(const RatFunZ& f) { return {{"num", zpoly_to_json(f.num())}, {"den", zpoly_to_json(f.den())}}; }

RatFunZ ratfun_from_json(const json& j) {
  if (!j.is_object() || !j.contains("num")) throw InputError("rational function needs a \"num\" field");
  RatFunZ num = laurent_from_json(j["num"]);
  RatFunZ den = j.contains("den") ? laurent_from_json(j["den"]) : RatFunZ(1L);
  if (den.is_zero()) throw InputError("rational function has a zero denominator");
  return num / den;
}

json ratmatrix_to_json(const RatMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(ratfun_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json series_to_json(const LaurentSeries& s) {
  json c = json::array();
  for (const auto& x : s.coeffs) c.push_back(scalar_to_json(x));
  return {{"anchor", s.anchor == Anchor::infinity ? "inf" : "0"}, {"offset", s.offset}, {"coeffs", c}};
}

LaurentSeries series_from_json(const json& j) {
  if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array()) {
    throw InputError("series needs a \"coeffs\" array");
  }
  LaurentSeries s;
  s.anchor = anchor_from_json(j.value("anchor", json("inf")));
  const json off = j.value("offset", json(0));
  if (!off.is_number_integer()) throw InputError("series offset must be an integer");
  s.offset = off.get<int>();
  for (const auto& c : j["coeffs"]) s.coeffs.push_back(scalar_from_json(c));
  return s;
}

json rep_to_json(const LoopRep& rep) {
  json e = json::object();
  json f = json::object();
  const int lo = std::min(rep.k_min, -1);
  const int hi = std::max(rep.k_max, 1);
  for (int k = lo; k <= hi; ++k) {
    e[std::to_string(k)] = matrix_to_json(rep.e(k));
    f[std::to_string(k)] = matrix_to_json(rep.f(k));
  }
  return {{"dim", rep.dim()},
          {"q", scalar_to_json(rep.q)},
          {"weights", rep.space.weights},
          {"window", {rep.k_min, rep.k_max}},
          {"K", matrix_to_json(rep.K)},
          {"E", e},
          {"F", f},
          {"meta", rep.meta}};
}

LoopRep rep_from_json(const json& j, const RepOptions& options) {
  if (!j.is_object()) throw InputError("representation must be a JSON object");
  if (!j.contains("weights") || !j["weights"].is_array()) throw InputError("representation needs a \"weights\" array");
  std::vector<int> weights;
  for (const auto& w : j["weights"]) {
    if (!w.is_number_integer()) throw InputError("weights must be integers");
    weights.push_back(w.get<int>());
  }
  const std::size_t dim = weights.size();
  if (j.contains("dim") && (!j["dim"].is_number_unsigned() || j["dim"].get<std::size_t>() != dim)) {
    throw InputError("\"dim\" does not match the number of weights");
  }
  const ScalarQ q = j.contains("q") ? scalar_from_json(j["q"]) : ScalarQ::q();
  if (q.is_zero() || q == ScalarQ(1L) || q == ScalarQ(-1L)) throw InputError("q must not be 0, 1 or -1");
  if (j.contains("K") && !(matrix_from_json(j["K"], dim) == q_power_diagonal(weights, q))) {
    throw InputError("K is not the diagonal matrix q^weight");
  }
  auto mode = [&](const char* x, int k) -> Matrix {
    const std::string key = std::to_string(k);
    if (!j.contains(x) || !j[x].is_object() || !j[x].contains(key)) {
      throw InputError(std::string("representation needs mode ") + x + "_" + key);
    }
    return matrix_from_json(j[x][key], dim);
  };
  LoopSeeds seeds{mode("E", 0), mode("F", 0), mode("F", 1), mode("E", -1)};
  RepOptions o = options;
  if (j.contains("window")) {
    const json& w = j["window"];
    if (!w.is_array() || w.size() != 2 || !w[0].is_number_integer() || !w[1].is_number_integer()) {
      throw InputError("\"window\" must be [k_min, k_max]");
    }
    o.k_min = std::min(o.k_min, w[0].get<int>());
    o.k_max = std::max(o.k_max, w[1].get<int>());
  }
  json meta = j.value("meta", json::object());
  LoopRep rep = build_from_seeds(q, weights, seeds, o, meta);

  Report stored;
  for (const char* x : {"E", "F"}) {
    if (!j.contains(x) || !j[x].is_object()) continue;
    for (const auto& [key, value] : j[x].items()) {
      int k = 0;
      try {
        std::size_t pos = 0;
        k = std::stoi(key, &pos);
        if (pos != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        throw InputError("mode index must be an integer, got \"" + key + "\"");
      }
      Matrix given = matrix_from_json(value, dim);
      const Matrix& generated = x[0] == 'E' ? rep.e(k) : rep.f(k);
      bool ok = given == generated;
      json w = {{"mode", std::string(x) + "_" + key}};
      if (!ok) w["difference"] = matrix_to_json(given - generated);
      stored.add("stored-mode", "every stored mode equals the mode generated from E_0, F_0, F_1, E_{-1}", ok, w);
    }
  }
  if (!stored.passed()) throw RelationError("stored mode disagrees with generated mode", stored);
  return rep;
}

}  // namespace qlw
