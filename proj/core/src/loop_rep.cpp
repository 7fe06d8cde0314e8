#include "qlw/loop_rep.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qlw/io.hpp"
#include "qlw/qnumbers.hpp"
#include "qlw/series.hpp"

namespace qlw {

namespace {

using nlohmann::json;

std::string mode_name(const char* x, int k) {
  std::ostringstream os;
  os << x << "_" << k;
  return os.str();
}

json failure_witness(json indices, const Matrix& difference) {
  indices["difference"] = matrix_to_json(difference);
  return indices;
}

// psi+_m for m >= 0, psi-_m for m <= 0, zero elsewhere.
Matrix psi_mode(const LoopRep& rep, int sign, int m) {
  if (sign > 0) {
    if (m < 0) return Matrix(rep.dim(), rep.dim());
    if (static_cast<std::size_t>(m) >= rep.psi_plus.size()) throw std::out_of_range("psi+ mode beyond cache");
    return rep.psi_plus[m];
  }
  if (m > 0) return Matrix(rep.dim(), rep.dim());
  if (static_cast<std::size_t>(-m) >= rep.psi_minus.size()) throw std::out_of_range("psi- mode beyond cache");
  return rep.psi_minus[-m];
}

void check_psi_commute(const LoopRep& rep, Report& report) {
  std::vector<std::pair<std::string, const Matrix*>> all;
  for (std::size_t r = 0; r < rep.psi_plus.size(); ++r) all.emplace_back(mode_name("psi+", static_cast<int>(r)), &rep.psi_plus[r]);
  for (std::size_t r = 1; r < rep.psi_minus.size(); ++r) all.emplace_back(mode_name("psi-", -static_cast<int>(r)), &rep.psi_minus[r]);
  json witness = nullptr;
  for (std::size_t i = 0; i < all.size() && witness.is_null(); ++i) {
    if (all[i].second->is_diagonal()) {
      bool any = false;
      for (std::size_t j = i + 1; j < all.size(); ++j) any = any || !all[j].second->is_diagonal();
      if (!any) continue;
    }
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      if (all[i].second->is_diagonal() && all[j].second->is_diagonal()) continue;
      Matrix c = commutator(*all[i].second, *all[j].second);
      if (!c.is_zero()) {
        witness = failure_witness({{"a", all[i].first}, {"b", all[j].first}}, c);
        break;
      }
    }
  }
  report.add("psi-commute", "all modes of psi+ and psi- commute", witness.is_null(), witness);
  Matrix prod = rep.psi_plus[0] * rep.psi_minus[0];
  report.add("psi-commute", "psi+_0 psi-_0 = 1", prod == rep.identity(),
             prod == rep.identity() ? json(nullptr) : failure_witness(json::object(), prod - rep.identity()));
}

void check_cartan_adjoint(const LoopRep& rep, Report& report) {
  const ScalarQ q2 = rep.q.pow(2);
  const ScalarQ qm2 = rep.q.pow(-2);
  const Matrix qw = q_power_diagonal(rep.space.weights, rep.q);
  report.add("weight-grading", "K acts by q^weight on the weight basis", rep.K == qw && rep.K * rep.K_inv == rep.identity());
  for (int k = rep.k_min; k <= rep.k_max; ++k) {
    const Matrix& e = rep.e(k);
    const Matrix& f = rep.f(k);
    Matrix d1 = rep.K * e * rep.K_inv - q2 * e;
    Matrix d2 = rep.K_inv * e * rep.K - qm2 * e;
    Matrix d3 = rep.K * f * rep.K_inv - qm2 * f;
    Matrix d4 = rep.K_inv * f * rep.K - q2 * f;
    bool ok = d1.is_zero() && d2.is_zero() && d3.is_zero() && d4.is_zero();
    json w = {{"k", k}};
    if (!ok) {
      w["E_plus"] = matrix_to_json(d1);
      w["E_minus"] = matrix_to_json(d2);
      w["F_plus"] = matrix_to_json(d3);
      w["F_minus"] = matrix_to_json(d4);
    }
    report.add("cartan-adjoint", "psi+-_0 E_k psi+-_0^-1 = q^(+-2) E_k and psi+-_0 F_k psi+-_0^-1 = q^(-+2) F_k", ok, w);
  }
}

// psi_{k+1} X_l - c X_l psi_{k+1} = c psi_k X_{l+1} - X_{l+1} psi_k,
// c = q^2 for X = E and q^-2 for X = F.
void check_psi_exchange(const LoopRep& rep, Report& report) {
  for (int which = 0; which < 2; ++which) {
    const char* x = which == 0 ? "E" : "F";
    const ScalarQ c = rep.q.pow(which == 0 ? 2 : -2);
    for (int sign : {1, -1}) {
      const int lo = sign > 0 ? 0 : rep.k_min;
      const int hi = sign > 0 ? rep.k_max : -1;
      for (int k = lo; k <= hi; ++k) {
        const Matrix p1 = psi_mode(rep, sign, k + 1);
        const Matrix p0 = psi_mode(rep, sign, k);
        for (int l = rep.k_min; l <= rep.k_max; ++l) {
          const Matrix& xl = which == 0 ? rep.e(l) : rep.f(l);
          const Matrix& xl1 = which == 0 ? rep.e(l + 1) : rep.f(l + 1);
          Matrix d = (p1 * xl - c * (xl * p1)) - (c * (p0 * xl1) - xl1 * p0);
          json w = {{"series", sign > 0 ? "psi+" : "psi-"}, {"mode", x}, {"k", k}, {"l", l}};
          bool ok = d.is_zero();
          report.add("psi-exchange",
                     std::string("psi_{k+1} ") + x + "_l - q^(+-2) " + x + "_l psi_{k+1} = q^(+-2) psi_k " + x +
                         "_{l+1} - " + x + "_{l+1} psi_k",
                     ok, ok ? w : failure_witness(w, d));
        }
      }
    }
  }
}

// X_{k+1} X_l - c X_l X_{k+1} = c X_k X_{l+1} - X_{l+1} X_k.
void check_mode_exchange(const LoopRep& rep, Report& report) {
  for (int which = 0; which < 2; ++which) {
    const ScalarQ c = rep.q.pow(which == 0 ? 2 : -2);
    const char* id = which == 0 ? "raising-exchange" : "lowering-exchange";
    const char* stmt = which == 0 ? "E_{k+1} E_l - q^2 E_l E_{k+1} = q^2 E_k E_{l+1} - E_{l+1} E_k"
                                  : "F_{k+1} F_l - q^-2 F_l F_{k+1} = q^-2 F_k F_{l+1} - F_{l+1} F_k";
    auto x = [&](int k) -> const Matrix& { return which == 0 ? rep.e(k) : rep.f(k); };
    for (int k = rep.k_min; k <= rep.k_max; ++k) {
      for (int l = rep.k_min; l <= rep.k_max; ++l) {
        Matrix d = (x(k + 1) * x(l) - c * (x(l) * x(k + 1))) - (c * (x(k) * x(l + 1)) - x(l + 1) * x(k));
        json w = {{"k", k}, {"l", l}};
        bool ok = d.is_zero();
        report.add(id, stmt, ok, ok ? w : failure_witness(w, d));
      }
    }
  }
}

void check_ef_commutator(const LoopRep& rep, Report& report) {
  const ScalarQ inv = (rep.q - rep.q.inverse()).inverse();
  for (int k = rep.k_min; k <= rep.k_max; ++k) {
    for (int l = rep.k_min; l <= rep.k_max; ++l) {
      Matrix rhs = inv * (psi_mode(rep, 1, k + l) - psi_mode(rep, -1, k + l));
      Matrix d = commutator(rep.e(k), rep.f(l)) - rhs;
      json w = {{"k", k}, {"l", l}};
      bool ok = d.is_zero();
      report.add("ef-commutator", "[E_k, F_l] = (psi+_{k+l} - psi-_{k+l}) / (q - q^-1)", ok,
                 ok ? w : failure_witness(w, d));
    }
  }
}

Matrix diag_of(const std::vector<int>& w) {
  std::vector<ScalarQ> d;
  for (int x : w) d.emplace_back(static_cast<long>(x));
  return Matrix::diagonal(d);
}

KMGenerators km_from(const LoopRep& rep) {
  KMGenerators km;
  km.E1 = rep.e(0);
  km.F1 = rep.f(0);
  km.E0 = rep.K_inv * rep.f(1);
  km.F0 = rep.e(-1) * rep.K;
  km.K1 = rep.K;
  km.K0 = rep.K_inv;
  km.h1 = rep.space.weights;
  for (int w : rep.space.weights) km.h0.push_back(-w);
  return km;
}

std::vector<int> concat(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  }
  for (std::size_t i = 0; i < b.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  }
  return m;
}

}  // namespace

std::vector<std::size_t> WeightDecomposition::indices_of(int w) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] == w) out.push_back(i);
  }
  return out;
}

std::vector<int> WeightDecomposition::distinct() const {
  std::set<int, std::greater<>> s(weights.begin(), weights.end());
  return {s.begin(), s.end()};
}

const Matrix& LoopRep::e(int k) const {
  auto it = E.find(k);
  if (it == E.end()) throw std::out_of_range("E mode " + std::to_string(k) + " is not stored");
  return it->second;
}

const Matrix& LoopRep::f(int k) const {
  auto it = F.find(k);
  if (it == F.end()) throw std::out_of_range("F mode " + std::to_string(k) + " is not stored");
  return it->second;
}

Matrix LoopRep::h0() const { return diag_of(space.weights); }

LoopSeeds seeds_of(const LoopRep& rep) { return {rep.e(0), rep.f(0), rep.f(1), rep.e(-1)}; }

LoopRep build_from_seeds(const ScalarQ& q, const std::vector<int>& weights, const LoopSeeds& seeds,
                         const RepOptions& options, json meta) {
  if (options.k_min > 0 || options.k_max < 0) throw std::invalid_argument("the mode window must contain 0");
  LoopRep rep;
  rep.q = q;
  rep.space.weights = weights;
  const std::size_t n = weights.size();
  for (const Matrix* m : {&seeds.E0, &seeds.F0, &seeds.F1, &seeds.Em1}) {
    if (m->rows() != n || m->cols() != n) throw std::invalid_argument("seed matrix has the wrong shape");
  }
  rep.K = q_power_diagonal(weights, q);
  rep.K_inv = inverse(rep.K);
  rep.k_min = options.k_min;
  rep.k_max = options.k_max;
  rep.r_max = options.r_max ? options.r_max : 2 * n + 8;
  const int window = std::max(-options.k_min, options.k_max);
  rep.mode_radius = std::max<int>(window, static_cast<int>(rep.r_max)) + 2;
  rep.meta = std::move(meta);

  const ScalarQ half = qint(2, q).inverse();
  const Matrix h1 = rep.K_inv * commutator(seeds.E0, seeds.F1);
  const Matrix hm1 = rep.K * commutator(seeds.Em1, seeds.F0);
  rep.E[0] = seeds.E0;
  rep.F[0] = seeds.F0;
  for (int k = 0; k < rep.mode_radius; ++k) {
    rep.E[k + 1] = half * commutator(h1, rep.E[k]);
    rep.F[k + 1] = -(half * commutator(h1, rep.F[k]));
  }
  for (int k = 0; k > -rep.mode_radius; --k) {
    rep.E[k - 1] = half * commutator(hm1, rep.E[k]);
    rep.F[k - 1] = -(half * commutator(hm1, rep.F[k]));
  }

  Report seed_report;
  seed_report.add("seed-consistency", "F_1 regenerated from H_1 and F_0 equals the seed F_1", rep.F[1] == seeds.F1,
                  rep.F[1] == seeds.F1 ? json(nullptr) : failure_witness(json::object(), rep.F[1] - seeds.F1));
  seed_report.add("seed-consistency", "E_{-1} regenerated from H_{-1} and E_0 equals the seed E_{-1}",
                  rep.E[-1] == seeds.Em1,
                  rep.E[-1] == seeds.Em1 ? json(nullptr) : failure_witness(json::object(), rep.E[-1] - seeds.Em1));
  rep.F[1] = seeds.F1;
  rep.E[-1] = seeds.Em1;

  const ScalarQ qq = q - q.inverse();
  rep.psi_plus.assign(1, rep.K);
  rep.psi_minus.assign(1, rep.K_inv);
  for (std::size_t r = 1; r <= rep.r_max; ++r) {
    rep.psi_plus.push_back(qq * commutator(rep.E[0], rep.F[static_cast<int>(r)]));
    rep.psi_minus.push_back(-(qq * commutator(rep.E[0], rep.F[-static_cast<int>(r)])));
  }

  const std::size_t order = rep.r_max + 1;
  MatrixSeries bar_plus{Anchor::infinity, n, {}};
  MatrixSeries bar_minus{Anchor::zero, n, {}};
  for (std::size_t r = 0; r < order; ++r) {
    bar_plus.coeffs.push_back(rep.K_inv * rep.psi_plus[r]);
    bar_minus.coeffs.push_back(rep.K * rep.psi_minus[r]);
  }
  bool commuting = true;
  for (std::size_t r = 1; r < order && commuting; ++r) {
    for (std::size_t s = r + 1; s < order && commuting; ++s) {
      commuting = commutator(bar_plus.coeffs[r], bar_plus.coeffs[s]).is_zero() &&
                  commutator(bar_minus.coeffs[r], bar_minus.coeffs[s]).is_zero();
    }
  }
  Report report = seed_report;
  if (commuting) {
    const ScalarQ inv = qq.inverse();
    MatrixSeries lp = log_commuting(bar_plus);
    MatrixSeries lm = log_commuting(bar_minus);
    rep.h_plus.assign(1, rep.h0());
    rep.h_minus.assign(1, rep.h0());
    for (std::size_t r = 1; r < order; ++r) {
      rep.h_plus.push_back(inv * lp.coeffs[r]);
      rep.h_minus.push_back(-(inv * lm.coeffs[r]));
    }
  }
  report.merge(check_relations(rep));
  if (!report.passed()) {
    const CheckResult* bad = report.first_failure();
    throw RelationError("relation check failed: " + bad->check + " (" + bad->statement + ")", report);
  }
  return rep;
}

LoopRep eval_module(int n, const ScalarQ& a, const RepOptions& options, const ScalarQ& q) {
  if (n < 0) throw std::invalid_argument("eval_module: negative highest weight");
  if (a.is_zero()) throw std::invalid_argument("eval_module: the evaluation point must be nonzero");
  const std::size_t d = static_cast<std::size_t>(n) + 1;
  std::vector<int> weights;
  for (int r = 0; r <= n; ++r) weights.push_back(n - 2 * r);
  Matrix e0(d, d);
  Matrix f0(d, d);
  // E m(r) = [n - r + 1] m(r - 1), F m(r) = [r + 1] m(r + 1).
  for (int r = 1; r <= n; ++r) e0(r - 1, r) = qint(n - r + 1, q);
  for (int r = 0; r < n; ++r) f0(r + 1, r) = qint(r + 1, q);
  const Matrix k = q_power_diagonal(weights, q);
  const Matrix k_inv = inverse(k);
  LoopSeeds seeds{e0, f0, a * (k * f0), a.inverse() * (e0 * k_inv)};
  json meta = {{"kind", "evaluation"},
               {"n", n},
               {"a", a.to_string()},
               {"affine_generators", "E_0 -> a F, F_0 -> a^-1 E"}};
  return build_from_seeds(q, weights, seeds, options, std::move(meta));
}

LoopRep generate_modes(const LoopRep& rep, int k_min, int k_max) {
  RepOptions o{k_min, k_max, rep.r_max};
  return build_from_seeds(rep.q, rep.space.weights, seeds_of(rep), o, rep.meta);
}

Report check_relations(const LoopRep& rep) {
  Report report;
  if (rep.h_plus.empty()) {
    report.add("psi-commute", "the coefficients of psi+ K^-1 and psi- K commute", false, nullptr);
  }
  check_psi_commute(rep, report);
  check_cartan_adjoint(rep, report);
  check_psi_exchange(rep, report);
  check_mode_exchange(rep, report);
  check_ef_commutator(rep, report);
  report.merge(check_km_relations(km_from(rep), rep.q));
  return report;
}

Report check_km_relations(const KMGenerators& km, const ScalarQ& q) {
  Report report;
  const std::size_t n = km.K1.rows();
  const Matrix* Es[2] = {&km.E0, &km.E1};
  const Matrix* Fs[2] = {&km.F0, &km.F1};
  const Matrix* Ks[2] = {&km.K0, &km.K1};
  const Matrix kinv[2] = {inverse(km.K0), inverse(km.K1)};
  const int cartan[2][2] = {{2, -2}, {-2, 2}};
  report.add("km-cartan", "K_0 and K_1 commute", commutator(km.K0, km.K1).is_zero());
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      Matrix de = *Ks[i] * *Es[j] * kinv[i] - q.pow(cartan[i][j]) * *Es[j];
      Matrix df = *Ks[i] * *Fs[j] * kinv[i] - q.pow(-cartan[i][j]) * *Fs[j];
      bool ok = de.is_zero() && df.is_zero();
      json w = {{"i", i}, {"j", j}};
      report.add("km-cartan", "K_i E_j K_i^-1 = q^(a_ij) E_j and K_i F_j K_i^-1 = q^(-a_ij) F_j", ok,
                 ok ? w : failure_witness(w, de.is_zero() ? df : de));
      Matrix rhs = i == j ? (q - q.inverse()).inverse() * (*Ks[i] - kinv[i]) : Matrix(n, n);
      Matrix d = commutator(*Es[i], *Fs[j]) - rhs;
      report.add("km-commutator", "[E_i, F_j] = delta_ij (K_i - K_i^-1) / (q - q^-1)", d.is_zero(),
                 d.is_zero() ? w : failure_witness(w, d));
    }
  }
  for (int i = 0; i < 2; ++i) {
    const int j = 1 - i;
    for (int which = 0; which < 2; ++which) {
      const Matrix& xi = which == 0 ? *Es[i] : *Fs[i];
      const Matrix& xj = which == 0 ? *Es[j] : *Fs[j];
      Matrix sum(n, n);
      for (int s = 0; s <= 3; ++s) {
        Matrix term = qbinom(3, s, q) * (power(xi, 3 - s) * xj * power(xi, s));
        sum = s % 2 == 0 ? sum + term : sum - term;
      }
      json w = {{"i", i}, {"j", j}, {"generator", which == 0 ? "E" : "F"}};
      report.add("affine-serre", "sum_s (-1)^s [3 choose s] X_i^(3-s) X_j X_i^s = 0 for i != j", sum.is_zero(),
                 sum.is_zero() ? w : failure_witness(w, sum));
    }
  }
  return report;
}

KMGenerators beck_km_generators(const LoopRep& rep) {
  KMGenerators km = km_from(rep);
  Report r = check_km_relations(km, rep.q);
  if (!r.passed()) throw RelationError("Kac-Moody relations fail: " + r.first_failure()->check, r);
  return km;
}

LoopSeeds seeds_from_km(const KMGenerators& km) { return {km.E1, km.F1, km.K1 * km.E0, km.F0 * km.K0}; }

LoopRep shift_twist(const LoopRep& rep, const ScalarQ& zeta) {
  if (zeta.is_zero()) throw std::invalid_argument("shift_twist: zeta must be nonzero");
  LoopSeeds s = seeds_of(rep);
  s.F1 = zeta * s.F1;
  s.Em1 = zeta.inverse() * s.Em1;
  json meta = rep.meta;
  meta["twist"] = meta.contains("twist") ? (ScalarQ::parse(meta["twist"].get<std::string>()) * zeta).to_string()
                                         : zeta.to_string();
  return build_from_seeds(rep.q, rep.space.weights, s, {rep.k_min, rep.k_max, rep.r_max}, std::move(meta));
}

LoopRep direct_sum(const LoopRep& a, const LoopRep& b) {
  if (!(a.q == b.q)) throw std::invalid_argument("direct_sum: parameters q differ");
  LoopSeeds sa = seeds_of(a);
  LoopSeeds sb = seeds_of(b);
  LoopSeeds s{block_diag(sa.E0, sb.E0), block_diag(sa.F0, sb.F0), block_diag(sa.F1, sb.F1),
              block_diag(sa.Em1, sb.Em1)};
  json meta = {{"kind", "direct_sum"}, {"summands", json::array({a.meta, b.meta})}};
  RepOptions o{std::min(a.k_min, b.k_min), std::max(a.k_max, b.k_max), 0};
  return build_from_seeds(a.q, concat(a.space.weights, b.space.weights), s, o, std::move(meta));
}

LoopRep omega_mirror(const LoopRep& rep) {
  LoopSeeds s{rep.e(0), rep.f(0), rep.f(-1), rep.e(1)};
  json meta = {{"kind", "mirror"}, {"of", rep.meta}};
  return build_from_seeds(rep.q.inverse(), rep.space.weights, s, {rep.k_min, rep.k_max, rep.r_max},
                          std::move(meta));
}

}  // namespace qlw
