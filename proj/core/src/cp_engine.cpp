#include "qlw/cp_engine.hpp"

#include <algorithm>
#include <string>

#include "qlw/io.hpp"
#include "qlw/qnumbers.hpp"
#include "qlw/qweyl.hpp"

namespace qlw {

using nlohmann::json;

namespace {

MatrixSeries series_of(Anchor anchor, std::size_t dim, std::vector<Matrix> coeffs) {
  return MatrixSeries{anchor, dim, std::move(coeffs)};
}

MatrixSeries constant_series(const Matrix& m, Anchor anchor, std::size_t order) {
  MatrixSeries s = MatrixSeries::zero(anchor, m.rows(), order);
  if (order > 0) s.coeffs[0] = m;
  return s;
}

// s(u(t)) for a scalar series u with zero constant term.
MatrixSeries compose(const MatrixSeries& s, const std::vector<ScalarQ>& u) {
  const std::size_t n = s.order();
  MatrixSeries out = MatrixSeries::zero(Anchor::zero, s.dim, n);
  std::vector<ScalarQ> power(n);
  if (n > 0) power[0] = ScalarQ(1L);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t m = 0; m < n; ++m) {
      if (!power[m].is_zero() && !s.coeffs[k].is_zero()) out.coeffs[m] += power[m] * s.coeffs[k];
    }
    std::vector<ScalarQ> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (power[i].is_zero()) continue;
      for (std::size_t j = 1; i + j < n; ++j) {
        if (!u[j].is_zero()) next[i + j] += power[i] * u[j];
      }
    }
    power = std::move(next);
  }
  return out;
}

Matrix diagonal_from(const std::vector<int>& weights, const auto& f) {
  std::vector<ScalarQ> d;
  for (int w : weights) d.push_back(f(w));
  return Matrix::diagonal(d);
}

RatMatrix rat_diagonal(const std::vector<RatFunZ>& d) {
  RatMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

bool rat_is_diagonal(const RatMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (i != j && !m(i, j).is_zero()) return false;
    }
  }
  return true;
}

Matrix divided(const Matrix& x, unsigned n, const ScalarQ& q) {
  return qfactorial(n, q).inverse() * power(x, n);
}

RatMatrix rat_divided(const RatMatrix& x, unsigned n, const ScalarQ& q) {
  return power(x, n) * RatFunZ(qfactorial(n, q).inverse());
}

RatMatrix pade_or_throw(const MatrixSeries& s, const std::string& what) {
  auto r = pade_reconstruct(s);
  if (!r) throw ReconstructionError(what + " does not reconstruct to a rational matrix at order " + std::to_string(s.order()));
  return *std::move(r);
}

json series_difference(std::size_t n, const Matrix& d) { return {{"coefficient", n}, {"difference", matrix_to_json(d)}}; }

// First coefficient at which two series differ, or null.
json compare_series(const MatrixSeries& a, const MatrixSeries& b) {
  const std::size_t n = std::min(a.order(), b.order());
  for (std::size_t k = 0; k < n; ++k) {
    if (!(a.coeffs[k] == b.coeffs[k])) return series_difference(k, a.coeffs[k] - b.coeffs[k]);
  }
  return nullptr;
}

json compare_rat(const RatMatrix& a, const RatMatrix& b) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (!(a(i, j) == b(i, j))) {
        return {{"entry", {i, j}}, {"left", ratfun_to_json(a(i, j))}, {"right", ratfun_to_json(b(i, j))}};
      }
    }
  }
  return nullptr;
}

unsigned nilpotency_index(const Matrix& x) {
  Matrix p = x;
  unsigned n = 0;
  while (!p.is_zero()) {
    p = p * x;
    ++n;
    if (n > x.rows()) throw std::invalid_argument("matrix is not nilpotent");
  }
  return n;
}

MatrixSeries psi_bar_series(const LoopRep& rep, int sign, std::size_t order) {
  std::vector<Matrix> c;
  for (std::size_t r = 0; r < order; ++r) {
    c.push_back(sign > 0 ? rep.K_inv * rep.psi_plus[r] : rep.K * rep.psi_minus[r]);
  }
  return series_of(sign > 0 ? Anchor::infinity : Anchor::zero, rep.dim(), std::move(c));
}

// (-q)^e for integer e.
ScalarQ minus_q_power(const ScalarQ& q, long e) { return (-q).pow(e); }

}  // namespace

std::size_t default_order(const LoopRep& rep) { return 2 * rep.dim() + 9; }

LoopRep with_order(const LoopRep& rep, std::size_t order) {
  if (order == 0 || order <= rep.r_max + 1) return rep;
  return build_from_seeds(rep.q, rep.space.weights, seeds_of(rep), {rep.k_min, rep.k_max, order - 1}, rep.meta);
}

PsiBar psi_bar(const LoopRep& rep) {
  const std::size_t order = rep.r_max + 1;
  PsiBar out{pade_or_throw(psi_bar_series(rep, 1, order), "psi_bar+"),
             pade_or_throw(psi_bar_series(rep, -1, order), "psi_bar-")};
  if (!(to_rat(rep.K) * out.plus == to_rat(rep.K_inv) * out.minus)) {
    throw ReconstructionError("psi+ and psi- reconstruct to different rational functions");
  }
  return out;
}

HModes h_modes(const LoopRep& rep_in, std::size_t order) {
  const LoopRep rep = with_order(rep_in, order);
  const ScalarQ inv = (rep.q - rep.q.inverse()).inverse();
  MatrixSeries lp = log_commuting(psi_bar_series(rep, 1, order));
  MatrixSeries lm = log_commuting(psi_bar_series(rep, -1, order));
  HModes h{{rep.h0()}, {rep.h0()}};
  for (std::size_t r = 1; r < order; ++r) {
    h.plus.push_back(inv * lp.coeffs[r]);
    h.minus.push_back(-(inv * lm.coeffs[r]));
  }
  return h;
}

CPSeries cp_series(const LoopRep& rep, std::size_t order) {
  const HModes h = h_modes(rep, order);
  const ScalarQ& q = rep.q;
  MatrixSeries yp = MatrixSeries::zero(Anchor::infinity, rep.dim(), order);
  MatrixSeries ym = MatrixSeries::zero(Anchor::zero, rep.dim(), order);
  for (std::size_t n = 1; n < order; ++n) {
    const long nn = static_cast<long>(n);
    const ScalarQ c = qint(nn, q).inverse();
    yp.coeffs[n] = -(q.pow(nn) * c * h.plus[n]);
    ym.coeffs[n] = -(q.pow(-nn) * c * h.minus[n]);
  }
  return {exp_commuting(yp), exp_commuting(ym)};
}

Report check_difference_equation(const LoopRep& rep_in, const CPSeries& cp) {
  const std::size_t order = cp.plus.order();
  const LoopRep rep = with_order(rep_in, order);
  Report report;
  const ScalarQ q2 = rep.q.pow(2);
  json wp = compare_series(scale_parameter(cp.plus, q2.inverse()), psi_bar_series(rep, 1, order) * cp.plus);
  report.add("difference-equation", "P+(q^2 z) = psi_bar+(z) P+(z) coefficientwise in 1/z", wp.is_null(),
             wp.is_null() ? json{{"order", order}} : wp);
  json wm = compare_series(scale_parameter(cp.minus, q2), psi_bar_series(rep, -1, order) * cp.minus);
  report.add("difference-equation", "P-(q^2 z) = psi_bar-(z) P-(z) coefficientwise in z", wm.is_null(),
             wm.is_null() ? json{{"order", order}} : wm);
  return report;
}

Straightening straightening_sides(const LoopRep& rep_in, std::size_t order) {
  const LoopRep rep = with_order(rep_in, order);
  const ScalarQ& q = rep.q;
  const std::size_t d = rep.dim();
  Straightening out;
  const Matrix& e0 = rep.e(0);
  const Matrix& f1 = rep.f(1);
  const Matrix& f2 = rep.f(2);
  out.N = nilpotency_index(e0);

  out.A_series = MatrixSeries::zero(Anchor::infinity, d, order);
  out.A = RatMatrix(d, d);
  for (unsigned n = 0; n <= out.N; ++n) {
    const long nn = n;
    Matrix c = q.pow(nn * nn) * (divided(e0, n, q) * divided(f1, n, q) * power(rep.K_inv, n));
    if (n % 2 == 1) c = -c;
    if (n < order) out.A_series.coeffs[n] = c;
    out.A = out.A + times_z_power(c, -static_cast<int>(n));
  }

  const MatrixSeries p = cp_series(rep, order).plus;
  const MatrixSeries p_inv = inverse(p);
  const MatrixSeries bar = psi_bar_series(rep, 1, order);
  std::vector<Matrix> e_modes;
  for (std::size_t k = 0; k < order; ++k) e_modes.push_back(rep.e(static_cast<int>(k)));
  const MatrixSeries e_plus = series_of(Anchor::infinity, d, e_modes);
  const RatMatrix e_rat = pade_or_throw(e_plus, "E+(z)");
  const RatMatrix bar_rat = psi_bar(rep).plus;

  out.B_series = MatrixSeries::zero(Anchor::infinity, d, order);
  out.B = RatMatrix(d, d);
  json telescoping = nullptr;
  for (unsigned l = 0; l <= d; ++l) {
    const long ll = l;
    // Series side.
    const MatrixSeries pi = p_inv * scale_parameter(p, q.pow(2 * ll));
    MatrixSeries product = MatrixSeries::identity(Anchor::infinity, d, order);
    for (long j = 1; j <= ll; ++j) product = product * inverse(scale_parameter(bar, q.pow(2 * j)));
    if (telescoping.is_null()) {
      json w = compare_series(pi, product);
      if (!w.is_null()) {
        w["l"] = l;
        telescoping = w;
      }
    }
    MatrixSeries x = MatrixSeries::zero(Anchor::infinity, d, order);
    x.coeffs[0] = f1;
    if (order > 1) x.coeffs[1] = -(q.pow(2 * ll + 2) * f2);
    const MatrixSeries x_div = divided_power(x, l, q);
    const MatrixSeries e_div = divided_power(scale_parameter(e_plus, q.pow(2 * ll)), l, q);
    Matrix pre = q.pow(ll * ll) * power(rep.K_inv, l);
    if (l % 2 == 1) pre = -pre;
    const MatrixSeries term = shift(constant_series(pre, Anchor::infinity, order), static_cast<int>(l)) * pi * x_div * e_div;

    // Rational side.
    RatMatrix pi_rat = to_rat(Matrix::identity(d));
    for (long j = 1; j <= ll; ++j) pi_rat = pi_rat * inverse(scale_argument(bar_rat, q.pow(-2 * j)));
    const RatMatrix x_rat = to_rat(f1) - times_z_power(q.pow(2 * ll + 2) * f2, -1);
    const RatMatrix term_rat = times_z_power(pre, -static_cast<int>(l)) * pi_rat * rat_divided(x_rat, l, q) *
                               rat_divided(scale_argument(e_rat, q.pow(-2 * ll)), l, q);
    bool nonzero = !term_rat.is_zero();
    for (const auto& c : term.coeffs) nonzero = nonzero || !c.is_zero();
    if (!nonzero) continue;
    out.M = l;
    out.B_series = out.B_series + term;
    out.B = out.B + term_rat;
  }

  out.report.add("telescoping", "P+(z)^-1 P+(q^-2l z) = prod_{j=1..l} psi_bar+(q^-2j z)^-1 as series in 1/z",
                 telescoping.is_null(), telescoping.is_null() ? json{{"order", order}} : telescoping);
  json w = compare_series(out.A_series, p * out.B_series);
  out.report.add("straightening",
                 "sum_n (-1)^n q^(n^2) E_0^(n) F_1^(n) K^-n z^-n = P+(z) B(z) coefficientwise in 1/z", w.is_null(),
                 w.is_null() ? json{{"order", order}, {"N", out.N}, {"M", out.M}} : w);
  json wb = compare_series(expand(out.B, Anchor::infinity, order), out.B_series);
  out.report.add("straightening-rational", "the rational form of B(z) expands to its series form", wb.is_null(),
                 wb.is_null() ? json{{"order", order}} : wb);
  return out;
}

CPRational cp_rational(const LoopRep& rep_in, std::size_t order) {
  const LoopRep rep = with_order(rep_in, order);
  CPRational out;
  const CPSeries cp = cp_series(rep, order);
  out.plus = pade_or_throw(cp.plus, "P+(z)");
  const Straightening st = straightening_sides(rep, order);
  out.report.merge(st.report);
  out.plus_straightened = st.A * inverse(st.B);
  json w = compare_rat(out.plus, out.plus_straightened);
  out.report.add("rationality", "P+ from Pade reconstruction equals A(z) B(z)^-1 as reduced rational matrices",
                 w.is_null(), w);
  json we = compare_series(expand(out.plus, Anchor::infinity, order), cp.plus);
  out.report.add("rationality", "the rational P+ re-expands to the exponential series through the computed order",
                 we.is_null(), we.is_null() ? json{{"order", order}} : we);

  const LoopRep mirror = omega_mirror(rep);
  const RatMatrix mirror_plus = pade_or_throw(cp_series(mirror, order).plus, "mirror P+(z)");
  out.minus = mirror_plus.map([](const RatFunZ& f) { return f.invert_argument(); });
  const RatMatrix own_minus = pade_or_throw(cp.minus, "P-(z)");
  json wm = compare_rat(out.minus, own_minus);
  out.report.add("mirror", "P-(z) from the mirrored representation equals the reconstruction of the P- series",
                 wm.is_null(), wm);
  const MatrixSeries at_inf = expand(out.plus, Anchor::infinity, 1);
  const MatrixSeries at_zero = expand(out.minus, Anchor::zero, 1);
  const bool normalized = at_inf.coeffs[0] == rep.identity() && at_zero.coeffs[0] == rep.identity();
  out.report.add("normalization", "P+(infinity) = 1 = P-(0)", normalized);
  return out;
}

LimitConstant limit_constant(const LoopRep& rep, const CPRational& p) {
  LimitConstant out;
  const std::size_t d = rep.dim();
  const auto& w = rep.space.weights;
  out.C = Matrix(d, d);
  json offblock = nullptr;
  json pole = nullptr;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (w[i] != w[j]) {
        if (!p.plus(i, j).is_zero() && offblock.is_null()) offblock = {{"entry", {i, j}}};
        continue;
      }
      try {
        out.C(i, j) = limit_with_prefactor(p.plus(i, j), Anchor::zero, w[i]);
      } catch (const PoleRemains& e) {
        if (pole.is_null()) pole = {{"entry", {i, j}}, {"error", e.what()}};
      }
    }
  }
  out.report.add("weight-preserving", "P+(z) preserves every weight space", offblock.is_null(), offblock);
  out.report.add("limit-constant", "z^lambda P+(z) has a finite nonzero limit at z = 0 on each weight space",
                 pole.is_null(), pole);

  Matrix c2(d, d);
  json pole2 = nullptr;
  for (int lambda : rep.space.distinct()) {
    const auto idx = rep.space.indices_of(lambda);
    RatMatrix block(idx.size(), idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a) {
      for (std::size_t b = 0; b < idx.size(); ++b) block(a, b) = p.minus(idx[a], idx[b]);
    }
    try {
      const RatMatrix inv = inverse(block);
      for (std::size_t a = 0; a < idx.size(); ++a) {
        for (std::size_t b = 0; b < idx.size(); ++b) {
          c2(idx[a], idx[b]) = limit_with_prefactor(inv(a, b), Anchor::infinity, lambda);
        }
      }
    } catch (const std::exception& e) {
      if (pole2.is_null()) pole2 = {{"weight", lambda}, {"error", e.what()}};
    }
  }
  const bool agree = pole2.is_null() && c2 == out.C;
  out.report.add("limit-constant", "lim_{z->0} z^lambda P+ equals lim_{z->inf} z^lambda (P-)^-1 on each weight space",
                 agree,
                 agree ? json(nullptr)
                       : (pole2.is_null() ? json{{"difference", matrix_to_json(out.C - c2)}} : pole2));

  bool invertible = true;
  Matrix c_inv;
  try {
    c_inv = inverse(out.C);
  } catch (const std::domain_error&) {
    invertible = false;
  }
  out.report.add("limit-constant", "C is invertible", invertible);
  if (!invertible) return out;

  std::vector<RatFunZ> zpow;
  for (int x : w) zpow.push_back(RatFunZ::z_power(x));
  json wid = compare_rat(rat_diagonal(zpow) * p.plus, to_rat(out.C) * p.minus);
  out.report.add("constant-identity", "z^H0 P+(z) = C P-(z) as rational matrices", wid.is_null(), wid);

  const ScalarQ q2 = rep.q.pow(2);
  for (int k = rep.k_min; k <= rep.k_max; ++k) {
    Matrix de = out.C * rep.e(k) * c_inv - q2 * rep.e(k + 2);
    Matrix df = out.C * rep.f(k) * c_inv - q2.inverse() * rep.f(k - 2);
    const bool ok = de.is_zero() && df.is_zero();
    json wk = {{"k", k}};
    if (!ok) wk["difference"] = matrix_to_json(de.is_zero() ? df : de);
    out.report.add("constant-conjugation", "C E_k C^-1 = q^2 E_{k+2} and C F_k C^-1 = q^-2 F_{k-2}", ok, wk);
  }
  json bad = nullptr;
  for (std::size_t r = 0; r < rep.psi_plus.size() && bad.is_null(); ++r) {
    if (!commutator(out.C, rep.psi_plus[r]).is_zero() || !commutator(out.C, rep.psi_minus[r]).is_zero()) {
      bad = {{"mode", r}};
    }
  }
  out.report.add("constant-conjugation", "C commutes with every cached mode of psi+ and psi-", bad.is_null(), bad);
  return out;
}

namespace {

// P+ commutes with the currents up to p(z, w) = (1 - q^2 w/z)(1 - w/z).
void check_current_commutation(const LoopRep& rep, const RatMatrix& p, Report& report) {
  const RatMatrix p_inv = inverse(p);
  const ScalarQ c1 = -(rep.q.pow(2) + ScalarQ(1L));
  const ScalarQ c2 = rep.q.pow(2);
  for (int n = rep.k_min; n <= rep.k_max; ++n) {
    const RatMatrix rhs_e = to_rat(rep.e(n)) + times_z_power(c1 * rep.e(n + 1), -1) + times_z_power(c2 * rep.e(n + 2), -2);
    json we = compare_rat(p * to_rat(rep.e(n)) * p_inv, rhs_e);
    report.add("current-commutation", "P+(z) E(w) P+(z)^-1 = (1 - q^2 w/z)(1 - w/z) E(w), coefficient of w^-n",
               we.is_null(), we.is_null() ? json{{"n", n}} : json{{"n", n}, {"mismatch", we}});
    const RatMatrix rhs_f = to_rat(rep.f(n)) + times_z_power(c1 * rep.f(n + 1), -1) + times_z_power(c2 * rep.f(n + 2), -2);
    json wf = compare_rat(p_inv * to_rat(rep.f(n)) * p, rhs_f);
    report.add("current-commutation", "P+(z)^-1 F(w) P+(z) = (1 - q^2 w/z)(1 - w/z) F(w), coefficient of w^-n",
               wf.is_null(), wf.is_null() ? json{{"n", n}} : json{{"n", n}, {"mismatch", wf}});
  }
}

std::size_t effective_order(const LoopRep& rep, std::size_t order) { return order ? order : default_order(rep); }

}  // namespace

Report verify_cp(const LoopRep& rep_in, std::size_t order_in) {
  const std::size_t order = effective_order(rep_in, order_in);
  const LoopRep rep = with_order(rep_in, order);
  Report report;
  try {
    psi_bar(rep);
    report.add("psi-rational", "psi+ and psi- reconstruct to the same rational matrix", true);
    const HModes h = h_modes(rep, order);
    const Matrix h1 = rep.K_inv * commutator(rep.e(0), rep.f(1));
    report.add("h-modes", "H_1 from log psi_bar+ equals K^-1 [E_0, F_1]", h.plus[1] == h1);
    bool commute = true;
    for (std::size_t r = 1; r < order && commute; ++r) {
      for (std::size_t s = 1; s < order && commute; ++s) {
        commute = commutator(h.plus[r], h.minus[s]).is_zero() && commutator(h.plus[r], h.plus[s]).is_zero();
      }
    }
    report.add("h-modes", "all H_r commute", commute);
    const CPSeries cp = cp_series(rep, order);
    report.merge(check_difference_equation(rep, cp));
    report.add("cp-first-coefficient", "the coefficient of z^-1 in P+ is -q H_1",
               order < 2 || cp.plus.coeffs[1] == -(rep.q * h.plus[1]));
    const CPRational p = cp_rational(rep, order);
    report.merge(p.report);
    const PsiBar bar = psi_bar(rep);
    const ScalarQ q2 = rep.q.pow(2);
    json dp = compare_rat(scale_argument(p.plus, q2), bar.plus * p.plus);
    report.add("difference-equation", "P+(q^2 z) = psi_bar+(z) P+(z) as rational matrices", dp.is_null(), dp);
    json dm = compare_rat(scale_argument(p.minus, q2), bar.minus * p.minus);
    report.add("difference-equation", "P-(q^2 z) = psi_bar-(z) P-(z) as rational matrices", dm.is_null(), dm);
    report.merge(limit_constant(rep, p).report);
    check_current_commutation(rep, p.plus, report);
  } catch (const ReconstructionError& e) {
    report.add("rationality", "the series reconstruct to rational matrices", false, {{"error", e.what()}});
  }
  return report;
}

Report verify_main_theorem(const LoopRep& rep_in, std::size_t order_in) {
  const std::size_t order = effective_order(rep_in, order_in);
  const LoopRep rep = with_order(rep_in, order);
  Report report;
  try {
    const CPRational p = cp_rational(rep, order);
    const LimitConstant lc = limit_constant(rep, p);
    for (const auto& e : lc.report.entries()) {
      if (e.status == CheckStatus::fail) report.add(e.check, e.statement, false, e.witness);
    }
    const auto [s0, s1] = node_operators(rep);
    const auto& w = rep.space.weights;
    const Matrix lhs = inverse(s1.matrix) * inverse(s0.matrix);
    const Matrix rhs = diagonal_from(w, [&](int x) { return minus_q_power(rep.q, -x); }) * lc.C;
    report.add("main-theorem", "S1^-1 S0^-1 = (-q)^-H0 C", lhs == rhs,
               lhs == rhs ? json{{"C", matrix_to_json(lc.C)}} : json{{"difference", matrix_to_json(lhs - rhs)}});
    bool inv_ok = true;
    Matrix form;
    try {
      form = diagonal_from(w, [&](int x) { return minus_q_power(rep.q, x); }) * inverse(lc.C);
    } catch (const std::domain_error&) {
      inv_ok = false;
    }
    const Matrix lattice = s0.matrix * s1.matrix;
    const bool ok = inv_ok && lattice == form;
    report.add("main-theorem", "the lattice operator S0 S1 equals (-1)^H0 q^H0 C^-1", ok,
               ok ? json{{"lattice", matrix_to_json(lattice)}} : json(nullptr));
  } catch (const ReconstructionError& e) {
    report.add("main-theorem", "S1^-1 S0^-1 = (-q)^-H0 C", false, {{"error", e.what()}});
  }
  return report;
}

Report verify_kernel_identities(const LoopRep& rep_in, std::size_t order_in) {
  const std::size_t order = effective_order(rep_in, order_in);
  const LoopRep rep = with_order(rep_in, order);
  const ScalarQ& q = rep.q;
  const std::size_t d = rep.dim();
  Report report;
  Matrix c;
  try {
    c = limit_constant(rep, cp_rational(rep, order)).C;
  } catch (const ReconstructionError& e) {
    report.add("kernel-identities", "the constant C is available", false, {{"error", e.what()}});
    return report;
  }
  const auto [s0, s1] = node_operators(rep);
  const Matrix s0_inv = inverse(s0.matrix);
  const Matrix& e0 = rep.e(0);
  const Matrix& f0 = rep.f(0);

  // E^-(z) = -sum_{m >= 1} E_{-m} z^m and its truncation without E_{-1}.
  MatrixSeries e_minus = MatrixSeries::zero(Anchor::zero, d, order);
  for (std::size_t m = 1; m < order; ++m) e_minus.coeffs[m] = -rep.e(-static_cast<int>(m));
  MatrixSeries e_under = e_minus;
  if (order > 1) e_under.coeffs[1] = Matrix(d, d);

  for (int lambda : rep.space.distinct()) {
    if (lambda < 0) continue;
    const auto idx = rep.space.indices_of(lambda);
    Matrix sub(d, idx.size());
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t a = 0; a < idx.size(); ++a) sub(i, a) = rep.e(-1)(i, idx[a]);
    }
    std::vector<std::vector<ScalarQ>> kernel;
    for (const auto& k : nullspace(sub)) {
      std::vector<ScalarQ> v(d);
      for (std::size_t a = 0; a < idx.size(); ++a) v[idx[a]] = k[a];
      kernel.push_back(std::move(v));
    }
    Matrix sum(d, d);
    for (unsigned l = 0; l <= d; ++l) {
      Matrix t = q.pow(static_cast<long>(l) * (lambda + 1)) * (divided(f0, l, q) * divided(e0, l, q));
      sum = l % 2 == 0 ? sum + t : sum - t;
    }
    const Matrix e_top = divided(e0, static_cast<unsigned>(lambda), q);
    bool ok_a = true;
    bool ok_b = true;
    json wa = nullptr;
    json wb = nullptr;
    for (const auto& v : kernel) {
      auto la = qlw::apply(e_top * s0_inv, v);
      auto ra = qlw::apply(sum * c, v);
      if (la != ra && ok_a) {
        ok_a = false;
        wa = {{"weight", lambda}};
      }
      auto lb = qlw::apply(e_top * s1.matrix, v);
      auto rb = qlw::apply(minus_q_power(q, lambda) * sum, v);
      if (lb != rb && ok_b) {
        ok_b = false;
        wb = {{"weight", lambda}};
      }
    }
    json base = {{"weight", lambda}, {"kernel_dim", kernel.size()}};
    report.add("kernel-identities",
               "E_0^(lambda) S0^-1 v = sum_l (-1)^l q^(l(lambda+1)) F_0^(l) E_0^(l) C v on Ker E_{-1} of weight lambda",
               ok_a, ok_a ? base : wa);
    report.add("kernel-identities",
               "E_0^(lambda) S1 v = (-q)^lambda sum_l (-1)^l q^(l(lambda+1)) F_0^(l) E_0^(l) v on Ker E_{-1} of weight lambda",
               ok_b, ok_b ? base : wb);

    json wc = nullptr;
    MatrixSeries pm = MatrixSeries::identity(Anchor::zero, d, order);
    MatrixSeries pu = pm;
    for (unsigned l = 1; l <= d && wc.is_null(); ++l) {
      pm = pm * e_minus;
      pu = pu * e_under;
      const ScalarQ f = q.pow(static_cast<long>(l) * (static_cast<long>(l) - 1));
      for (std::size_t m = 0; m < order && wc.is_null(); ++m) {
        const Matrix diff = pm.coeffs[m] - f * pu.coeffs[m];
        for (const auto& v : kernel) {
          auto r = qlw::apply(diff, v);
          if (std::any_of(r.begin(), r.end(), [](const ScalarQ& x) { return !x.is_zero(); })) {
            wc = {{"weight", lambda}, {"power", l}, {"coefficient", m}};
            break;
          }
        }
      }
    }
    report.add("left-ideal",
               "(E^-(z)^l - q^(l(l-1)) E_^-(z)^l) v = 0 for v in Ker E_{-1}, coefficientwise in z",
               wc.is_null(), wc.is_null() ? base : wc);
  }
  return report;
}

EulerResult euler_transform(const LoopRep& rep_in, std::size_t order_in) {
  const std::size_t order = effective_order(rep_in, order_in);
  const LoopRep rep = with_order(rep_in, order);
  const ScalarQ& q = rep.q;
  const std::size_t d = rep.dim();
  const auto& w = rep.space.weights;
  EulerResult out;
  const HModes h = h_modes(rep, order);

  std::vector<Matrix> tilde(order, Matrix(d, d));
  for (std::size_t r = 1; r < order; ++r) {
    Matrix t = rep.h0();
    for (std::size_t s = 1; s <= r; ++s) {
      mpz_class b;
      mpz_bin_uiui(b.get_mpz_t(), r, s);
      const ScalarQ c = ScalarQ(b) * ScalarQ(static_cast<long>(s)) / qint(static_cast<long>(s), q);
      t = s % 2 == 0 ? t + c * h.plus[s] : t - c * h.plus[s];
    }
    tilde[r] = t;
  }
  out.report.add("euler-h-tilde", "H~_1 = H_0 - H_1", order < 2 || tilde[1] == rep.h0() - h.plus[1]);

  MatrixSeries y = MatrixSeries::zero(Anchor::zero, d, order);
  for (std::size_t n = 1; n < order; ++n) y.coeffs[n] = ScalarQ(1L) / ScalarQ(static_cast<long>(n)) * tilde[n];
  const MatrixSeries cal = exp_commuting(y);

  // u = 1/z = -(1/q) t / (1 - t) and (1 - q/z)^H0 = (1 - t)^-H0.
  std::vector<ScalarQ> u(order);
  for (std::size_t m = 1; m < order; ++m) u[m] = -q.inverse();
  const CPSeries cp = cp_series(rep, order);
  MatrixSeries subst = compose(inverse(cp.plus), u);
  MatrixSeries binom = MatrixSeries::zero(Anchor::zero, d, order);
  for (std::size_t i = 0; i < d; ++i) {
    ScalarQ c(1L);
    for (std::size_t m = 0; m < order; ++m) {
      binom.coeffs[m](i, i) = c;
      c = c * ScalarQ(static_cast<long>(w[i]) + static_cast<long>(m)) / ScalarQ(static_cast<long>(m) + 1);
    }
  }
  subst = binom * subst;
  json ws = compare_series(subst, cal);
  out.report.add("euler-substitution", "(1 - q/z)^H0 P+(z)^-1 at z = q(t-1)/t equals exp(sum H~_n t^n / n)",
                 ws.is_null(), ws.is_null() ? json{{"order", order}} : ws);

  try {
    const RatMatrix p = pade_or_throw(cp.plus, "P+(z)");
    std::vector<RatFunZ> factor;
    const RatFunZ one_minus(ZPoly(std::vector<ScalarQ>{-q, ScalarQ(1L)}), ZPoly::monomial(ScalarQ(1L), 1));
    for (int x : w) factor.push_back(one_minus.pow(x));
    const RatMatrix r = rat_diagonal(factor) * inverse(p);
    const RatMatrix in_t = r.map([&](const RatFunZ& f) { return f.compose_mobius(q, -q, ScalarQ(1L), ScalarQ()); });
    json wr = compare_series(expand(in_t, Anchor::zero, order), cal);
    out.report.add("euler-rational", "the Euler series is the expansion of a rational function of t", wr.is_null(),
                   wr.is_null() ? json{{"order", order}} : wr);
    out.limit = Matrix(d, d);
    Matrix at_one(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        out.limit(i, j) = limit_with_prefactor(r(i, j), Anchor::zero, 0);
        at_one(i, j) = in_t(i, j).evaluate(ScalarQ(1L));
      }
    }
    const Matrix lattice = lattice_operator(rep).matrix;
    out.report.add("euler-limit", "the Euler series is regular at t = 1 with the same value as the limit z -> 0",
                   at_one == out.limit);
    out.report.add("euler-limit", "the value at t = 1 equals the lattice operator", out.limit == lattice,
                   out.limit == lattice ? json{{"limit", matrix_to_json(out.limit)}}
                                        : json{{"limit", matrix_to_json(out.limit)}, {"lattice", matrix_to_json(lattice)}});
  } catch (const std::exception& e) {
    out.report.add("euler-limit", "the Euler series has a finite value at t = 1", false, {{"error", e.what()}});
  }
  return out;
}

Report verify_shift_covariance(const LoopRep& rep, const ScalarQ& zeta) {
  Report report;
  const LoopRep tw = shift_twist(rep, zeta);
  const Matrix l = lattice_operator(rep).matrix;
  const Matrix lt = lattice_operator(tw).matrix;
  const Matrix rhs = diagonal_from(rep.space.weights, [&](int x) { return zeta.pow(-x); }) * l;
  report.add("shift-covariance", "the lattice operator of the twist by zeta is zeta^-H0 times the original", lt == rhs,
             {{"zeta", zeta.to_string()}});
  try {
    const std::size_t order = default_order(rep);
    const Matrix c = limit_constant(rep, cp_rational(rep, order)).C;
    const Matrix ct = limit_constant(tw, cp_rational(tw, order)).C;
    const Matrix expected = diagonal_from(rep.space.weights, [&](int x) { return zeta.pow(x); }) * c;
    report.add("shift-covariance", "the constant of the twist by zeta is zeta^H0 C", ct == expected,
               {{"zeta", zeta.to_string()}});
  } catch (const ReconstructionError& e) {
    report.add("shift-covariance", "the constant of the twist by zeta is zeta^H0 C", false, {{"error", e.what()}});
  }
  return report;
}

Report verify_eigenvalues(const LoopRep& rep_in, std::size_t order_in) {
  const std::size_t order = effective_order(rep_in, order_in);
  const LoopRep rep = with_order(rep_in, order);
  Report report;
  RatMatrix p;
  RatMatrix psi;
  try {
    p = cp_rational(rep, order).plus;
    psi = to_rat(rep.K) * psi_bar(rep).plus;
  } catch (const ReconstructionError& e) {
    report.add("eigenvalues", "P+ and psi are rational", false, {{"error", e.what()}});
    return report;
  }
  const Matrix lattice = lattice_operator(rep).matrix;
  if (!rat_is_diagonal(p) || !rat_is_diagonal(psi) || !lattice.is_diagonal()) {
    report.add_skipped("eigenvalues", "spectra of psi and the lattice operator", "operators are not diagonal in the given basis");
    return report;
  }
  for (std::size_t i = 0; i < rep.dim(); ++i) {
    const RatFunZ& f = p(i, i);
    auto zeros = split_q_power_roots(f.num());
    auto poles = split_q_power_roots(f.den());
    json base = {{"index", i}, {"weight", rep.space.weights[i]}};
    if (!zeros || !poles) {
      report.add("eigenvalues", "the diagonal of P+ splits into factors z - c q^k", false, base);
      continue;
    }
    AbelianCharacter ch;
    for (const auto& a : *zeros) {
      if (!a.is_zero()) ch.zeros.push_back(a);
    }
    for (const auto& b : *poles) {
      if (!b.is_zero()) ch.poles.push_back(b);
    }
    json zs = json::array();
    json ps = json::array();
    for (const auto& a : ch.zeros) zs.push_back(a.to_string());
    for (const auto& b : ch.poles) ps.push_back(b.to_string());
    base["zeros"] = zs;
    base["poles"] = ps;
    const bool normal = ch.degree() == rep.space.weights[i] && f == ch.r() * RatFunZ::z_power(-static_cast<int>(ch.degree()));
    report.add("eigenvalues", "P+ = z^-deg r r(z) with deg r equal to the weight", normal, base);
    const bool psi_ok = psi(i, i) == psi_eigen(ch, rep.q);
    report.add("eigenvalues", "the psi eigenvalue is q^-deg r r(q^2 z) / r(z)", psi_ok, base);
    const ScalarQ predicted = lattice_eigen(ch, -1, rep.q);
    const bool l_ok = lattice(i, i) == predicted;
    json wl = base;
    wl["lattice"] = lattice(i, i).to_string();
    wl["predicted"] = predicted.to_string();
    report.add("eigenvalues", "the lattice eigenvalue is q^(m-n) prod b / prod a", l_ok, wl);
  }
  return report;
}

}  // namespace qlw
