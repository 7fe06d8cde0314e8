#include "qlw/qweyl.hpp"

#include <stdexcept>

#include "qlw/io.hpp"
#include "qlw/qnumbers.hpp"

namespace qlw {

using nlohmann::json;

Matrix q_exp(const Matrix& x, const ScalarQ& base) {
  if (!x.is_square()) throw std::invalid_argument("q_exp: matrix is not square");
  const std::size_t d = x.rows();
  Matrix result = Matrix::identity(d);
  Matrix xn = Matrix::identity(d);
  for (std::size_t n = 1; n <= d; ++n) {
    xn = xn * x;
    if (xn.is_zero()) return result;
    if (n == d) break;
    const long m = static_cast<long>(n);
    result += (base.pow(m * (m - 1) / 2) / qfactorial(m, base)) * xn;
  }
  if (d == 0) return result;
  throw std::invalid_argument("q_exp: matrix is not nilpotent");
}

WeylOperator weyl_triple(const Matrix& e, const Matrix& f, const Matrix& k, const std::vector<int>& weights,
                         const ScalarQ& q, std::string label) {
  if (k.rows() != weights.size()) throw std::invalid_argument("weyl_triple: weights do not match the dimension");
  const ScalarQ qi = q.inverse();
  const Matrix k_inv = inverse(k);
  std::vector<ScalarQ> d;
  for (int w : weights) d.push_back(q.pow(static_cast<long>(w) * (w + 1) / 2));
  Matrix s = q_exp(qi * (e * k_inv), qi) * q_exp(-f, qi) * q_exp(q * (e * k), qi) * Matrix::diagonal(d);
  return {std::move(s), std::move(label), nullptr};
}

Matrix s_closed_form(int n, const ScalarQ& q) {
  if (n < 0) throw std::invalid_argument("s_closed_form: negative highest weight");
  const std::size_t d = static_cast<std::size_t>(n) + 1;
  Matrix s(d, d);
  for (int r = 0; r <= n; ++r) {
    const ScalarQ c = q.pow(static_cast<long>(n - r) * (r + 1));
    s(n - r, r) = (n - r) % 2 == 0 ? c : -c;
  }
  return s;
}

std::pair<WeylOperator, WeylOperator> node_operators(const LoopRep& rep) {
  KMGenerators km = beck_km_generators(rep);
  WeylOperator s0 = weyl_triple(km.E0, km.F0, km.K0, km.h0, rep.q, "S0");
  WeylOperator s1 = weyl_triple(km.E1, km.F1, km.K1, km.h1, rep.q, "S1");
  s0.source = rep.meta;
  s1.source = rep.meta;
  return {std::move(s0), std::move(s1)};
}

WeylOperator lattice_operator(const LoopRep& rep) {
  auto [s0, s1] = node_operators(rep);
  return {s0.matrix * s1.matrix, "L", rep.meta};
}

Report check_conjugation(const LoopRep& rep) {
  Report report;
  const Matrix l = lattice_operator(rep).matrix;
  const Matrix l_inv = inverse(l);
  auto ad = [&](const Matrix& x) { return l * x * l_inv; };
  for (int k = rep.k_min; k <= rep.k_max; ++k) {
    json w = {{"k", k}};
    Matrix de = ad(rep.e(k)) - rep.e(k - 2);
    report.add("lattice-conjugation", "L E_k L^-1 = E_{k-2}", de.is_zero(),
               de.is_zero() ? w : json{{"k", k}, {"difference", matrix_to_json(de)}});
    Matrix df = ad(rep.f(k)) - rep.f(k + 2);
    report.add("lattice-conjugation", "L F_k L^-1 = F_{k+2}", df.is_zero(),
               df.is_zero() ? w : json{{"k", k}, {"difference", matrix_to_json(df)}});
  }
  const int window = std::max(-rep.k_min, rep.k_max);
  for (int r = 1; r <= window && static_cast<std::size_t>(r) < rep.h_plus.size(); ++r) {
    for (int sign : {1, -1}) {
      const Matrix& h = sign > 0 ? rep.h_plus[r] : rep.h_minus[r];
      Matrix d = commutator(l, h);
      json w = {{"k", sign * r}};
      report.add("lattice-conjugation", "L H_k L^-1 = H_k", d.is_zero(),
                 d.is_zero() ? w : json{{"k", sign * r}, {"difference", matrix_to_json(d)}});
    }
  }
  json bad = nullptr;
  for (std::size_t r = 0; r < rep.psi_plus.size() && bad.is_null(); ++r) {
    for (int sign : {1, -1}) {
      Matrix d = commutator(l, sign > 0 ? rep.psi_plus[r] : rep.psi_minus[r]);
      if (!d.is_zero()) {
        bad = {{"mode", sign * static_cast<int>(r)}, {"series", sign > 0 ? "psi+" : "psi-"}, {"difference", matrix_to_json(d)}};
        break;
      }
    }
  }
  report.add("lattice-commutes-psi", "L commutes with every cached mode of psi+ and psi-", bad.is_null(), bad);
  return report;
}

Report verify_weyl(const LoopRep& rep) {
  Report report;
  const auto [s0, s1] = node_operators(rep);
  const Matrix l = s0.matrix * s1.matrix;
  const Matrix k_inv = rep.K_inv;
  for (const WeylOperator* s : {&s0, &s1}) {
    // S_i maps V[lambda] to V[-lambda]: S K S^-1 = K^-1.
    bool ok = true;
    try {
      ok = s->matrix * rep.K * inverse(s->matrix) == k_inv;
    } catch (const std::domain_error&) {
      ok = false;
    }
    report.add("weyl-weights", s->label + " is invertible and reverses weights", ok);
  }
  report.add("lattice-weights", "L preserves every weight space", l * rep.K == rep.K * l);
  const ScalarQ det = determinant(l);
  const bool monomial = det.is_monomial() && det.den().is_one() && (det.num()[0] == 1 || det.num()[0] == -1);
  report.add("lattice-determinant", "det L is a signed power of q", monomial, {{"det", det.to_string()}});
  if (rep.meta.value("kind", "") == "evaluation") {
    const int n = rep.meta.value("n", 0);
    const Matrix closed = s_closed_form(n, rep.q);
    const bool ok = s1.matrix == closed;
    report.add("weyl-closed-form", "the triple q-exponential on L_n equals the closed form", ok,
               ok ? json{{"n", n}} : json{{"n", n}, {"difference", matrix_to_json(s1.matrix - closed)}});
  } else {
    report.add_skipped("weyl-closed-form", "the triple q-exponential on L_n equals the closed form",
                       "not an evaluation module");
  }
  report.merge(check_conjugation(rep));
  return report;
}

}  // namespace qlw
