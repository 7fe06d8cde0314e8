#include "qlw/series.hpp"

#include <algorithm>
#include <string>

#include "qlw/qnumbers.hpp"

namespace qlw {

namespace {

// Power series quotient a / b to n terms; b[0] must be nonzero.
std::vector<ScalarQ> series_divide(const ZPoly& a, const ZPoly& b, std::size_t n) {
  std::vector<ScalarQ> c(n);
  const ScalarQ inv_b0 = b[0].inverse();
  for (std::size_t k = 0; k < n; ++k) {
    ScalarQ acc = a[static_cast<int>(k)];
    const std::size_t jmax = std::min<std::size_t>(k, std::max(0, b.degree()));
    for (std::size_t j = 1; j <= jmax; ++j) {
      if (!b[static_cast<int>(j)].is_zero() && !c[k - j].is_zero()) acc -= b[static_cast<int>(j)] * c[k - j];
    }
    c[k] = acc.is_zero() ? acc : acc * inv_b0;
  }
  return c;
}

// u^off * g(u) as a function of z for the given anchor.
RatFunZ from_local(const RatFunZ& g, int off, Anchor anchor) {
  if (anchor == Anchor::zero) return g * RatFunZ::z_power(off);
  return g.invert_argument() * RatFunZ::z_power(-off);
}

}  // namespace

ScalarQ LaurentSeries::at(int e) const {
  if (e < offset) return {};
  const std::size_t k = static_cast<std::size_t>(e - offset);
  if (k >= coeffs.size()) throw std::out_of_range("LaurentSeries::at: exponent beyond known order");
  return coeffs[k];
}

LaurentSeries expand(const RatFunZ& f, Anchor anchor, std::size_t order) {
  LaurentSeries s;
  s.anchor = anchor;
  if (f.is_zero()) {
    s.coeffs.assign(order, ScalarQ());
    return s;
  }
  if (anchor == Anchor::infinity) {
    const int dn = f.num().degree();
    const int dd = f.den().degree();
    s.offset = dd - dn;
    s.coeffs = series_divide(f.num().reversed(dn), f.den().reversed(dd), order);
  } else {
    const int vn = f.num().valuation();
    const int vd = f.den().valuation();
    s.offset = vn - vd;
    s.coeffs = series_divide(f.num().shift(-vn), f.den().shift(-vd), order);
  }
  return s;
}

std::vector<ScalarQ> expand_range(const RatFunZ& f, Anchor anchor, int lo, int hi) {
  std::vector<ScalarQ> out;
  if (hi <= lo) return out;
  if (f.is_zero()) return std::vector<ScalarQ>(hi - lo);
  const int off = (anchor == Anchor::infinity) ? f.den().degree() - f.num().degree()
                                               : f.num().valuation() - f.den().valuation();
  const std::size_t needed = static_cast<std::size_t>(std::max(0, hi - off));
  LaurentSeries s = expand(f, anchor, needed);
  out.reserve(hi - lo);
  for (int e = lo; e < hi; ++e) out.push_back(s.at(e));
  return out;
}

std::optional<RatFunZ> pade_reconstruct(const LaurentSeries& s, std::size_t guard) {
  std::size_t first = 0;
  while (first < s.coeffs.size() && s.coeffs[first].is_zero()) ++first;
  if (first == s.coeffs.size()) return RatFunZ();

  const std::vector<ScalarQ> c(s.coeffs.begin() + static_cast<long>(first), s.coeffs.end());
  const int off = s.offset + static_cast<int>(first);
  const std::size_t n = c.size();

  std::size_t last = n;
  while (last > 0 && c[last - 1].is_zero()) --last;
  if (n - last >= guard) return from_local(RatFunZ(ZPoly(std::vector<ScalarQ>(c.begin(), c.begin() + last))), off, s.anchor);

  if (n < guard + 3) return std::nullopt;
  const std::size_t dmax = (n - guard - 1) / 2;
  std::vector<std::size_t> degrees;
  for (std::size_t d = 1; d < dmax; d *= 2) degrees.push_back(d);
  degrees.push_back(dmax);

  for (std::size_t d : degrees) {
    // Rows k = d+1 .. 2d of D(u) * c(u) must vanish.
    Matrix system(d, d + 1);
    for (std::size_t r = 0; r < d; ++r) {
      const std::size_t k = d + 1 + r;
      for (std::size_t i = 0; i <= d; ++i) system(r, i) = c[k - i];
    }
    auto kernel = nullspace(system);
    // A denominator regular at u = 0 exists whenever the degree suffices.
    auto regular = std::find_if(kernel.begin(), kernel.end(), [](const auto& v) { return !v.front().is_zero(); });
    if (regular == kernel.end()) continue;
    ZPoly den(*regular);
    std::vector<ScalarQ> num_coeffs(d + 1);
    for (std::size_t k = 0; k <= d; ++k) {
      for (std::size_t i = 0; i <= k; ++i) {
        if (!den[static_cast<int>(i)].is_zero()) num_coeffs[k] += den[static_cast<int>(i)] * c[k - i];
      }
    }
    ZPoly num(std::move(num_coeffs));
    if (num.is_zero()) continue;
    RatFunZ g(num, den);
    if (g.den()[0].is_zero()) continue;
    LaurentSeries check = expand(g, Anchor::zero, n);
    if (check.offset != 0 || check.coeffs != c) continue;
    return from_local(g, off, s.anchor);
  }
  return std::nullopt;
}

ScalarQ limit_with_prefactor(const RatFunZ& f, Anchor anchor, int k) {
  if (f.is_zero()) return {};
  if (anchor == Anchor::zero) {
    const int o = k + f.order_at_zero();
    if (o < 0) throw PoleRemains("pole of order " + std::to_string(-o) + " remains at z = 0");
    if (o > 0) return {};
    return f.num()[f.num().valuation()] / f.den()[f.den().valuation()];
  }
  const int e = k + f.degree_at_infinity();
  if (e > 0) throw PoleRemains("pole of order " + std::to_string(e) + " remains at z = infinity");
  if (e < 0) return {};
  return f.num().lead() / f.den().lead();
}

MatrixSeries MatrixSeries::identity(Anchor anchor, std::size_t dim, std::size_t order) {
  MatrixSeries s = zero(anchor, dim, order);
  if (order > 0) s.coeffs[0] = Matrix::identity(dim);
  return s;
}

MatrixSeries MatrixSeries::zero(Anchor anchor, std::size_t dim, std::size_t order) {
  MatrixSeries s;
  s.anchor = anchor;
  s.dim = dim;
  s.coeffs.assign(order, Matrix(dim, dim));
  return s;
}

LaurentSeries MatrixSeries::entry(std::size_t i, std::size_t j) const {
  LaurentSeries s;
  s.anchor = anchor;
  s.coeffs.reserve(coeffs.size());
  for (const auto& m : coeffs) s.coeffs.push_back(m(i, j));
  return s;
}

MatrixSeries operator*(const MatrixSeries& a, const MatrixSeries& b) {
  const std::size_t n = std::min(a.order(), b.order());
  MatrixSeries out = MatrixSeries::zero(a.anchor, a.dim, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a.coeffs[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < n; ++j) {
      if (b.coeffs[j].is_zero()) continue;
      out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    }
  }
  return out;
}

MatrixSeries operator+(const MatrixSeries& a, const MatrixSeries& b) {
  const std::size_t n = std::min(a.order(), b.order());
  MatrixSeries out = MatrixSeries::zero(a.anchor, a.dim, n);
  for (std::size_t i = 0; i < n; ++i) out.coeffs[i] = a.coeffs[i] + b.coeffs[i];
  return out;
}

MatrixSeries operator-(const MatrixSeries& a, const MatrixSeries& b) {
  const std::size_t n = std::min(a.order(), b.order());
  MatrixSeries out = MatrixSeries::zero(a.anchor, a.dim, n);
  for (std::size_t i = 0; i < n; ++i) out.coeffs[i] = a.coeffs[i] - b.coeffs[i];
  return out;
}

MatrixSeries operator*(const Matrix& m, const MatrixSeries& s) {
  MatrixSeries out = s;
  for (auto& c : out.coeffs) {
    if (!c.is_zero()) c = m * c;
  }
  return out;
}

MatrixSeries scale_parameter(const MatrixSeries& s, const ScalarQ& c) {
  MatrixSeries out = s;
  ScalarQ f(1L);
  for (auto& m : out.coeffs) {
    if (!m.is_zero()) m *= f;
    f *= c;
  }
  return out;
}

MatrixSeries shift(const MatrixSeries& s, int k) {
  if (k < 0) throw std::invalid_argument("shift: negative exponent");
  MatrixSeries out = MatrixSeries::zero(s.anchor, s.dim, s.order());
  for (std::size_t i = 0; i + k < s.order(); ++i) out.coeffs[i + k] = s.coeffs[i];
  return out;
}

MatrixSeries inverse(const MatrixSeries& s) {
  if (s.order() == 0) return s;
  MatrixSeries r = MatrixSeries::zero(s.anchor, s.dim, s.order());
  const Matrix inv0 = qlw::inverse(s.coeffs[0]);
  r.coeffs[0] = inv0;
  for (std::size_t n = 1; n < s.order(); ++n) {
    Matrix acc(s.dim, s.dim);
    for (std::size_t j = 1; j <= n; ++j) {
      if (!s.coeffs[j].is_zero() && !r.coeffs[n - j].is_zero()) acc += s.coeffs[j] * r.coeffs[n - j];
    }
    r.coeffs[n] = -(inv0 * acc);
  }
  return r;
}

MatrixSeries divided_power(const MatrixSeries& s, unsigned n, const ScalarQ& q) {
  MatrixSeries p = MatrixSeries::identity(s.anchor, s.dim, s.order());
  for (unsigned i = 0; i < n; ++i) p = p * s;
  const ScalarQ f = qfactorial(n, q).inverse();
  for (auto& m : p.coeffs) {
    if (!m.is_zero()) m *= f;
  }
  return p;
}

MatrixSeries log_commuting(const MatrixSeries& s) {
  MatrixSeries l = MatrixSeries::zero(s.anchor, s.dim, s.order());
  if (s.order() > 0 && !(s.coeffs[0] == Matrix::identity(s.dim))) {
    throw std::domain_error("log_commuting: constant term is not the identity");
  }
  // k s_k = sum_{j=1}^{k} j L_j s_{k-j}
  for (std::size_t k = 1; k < s.order(); ++k) {
    Matrix acc(s.dim, s.dim);
    for (std::size_t j = 1; j < k; ++j) {
      if (l.coeffs[j].is_zero() || s.coeffs[k - j].is_zero()) continue;
      acc += (l.coeffs[j] * s.coeffs[k - j]) * ScalarQ(static_cast<long>(j));
    }
    l.coeffs[k] = s.coeffs[k] - acc * ScalarQ(mpq_class(1, k));
  }
  return l;
}

MatrixSeries exp_commuting(const MatrixSeries& s) {
  if (s.order() > 0 && !s.coeffs[0].is_zero()) throw std::domain_error("exp_commuting: nonzero constant term");
  MatrixSeries p = MatrixSeries::identity(s.anchor, s.dim, s.order());
  // k P_k = sum_{j=1}^{k} j Y_j P_{k-j}
  for (std::size_t k = 1; k < s.order(); ++k) {
    Matrix acc(s.dim, s.dim);
    for (std::size_t j = 1; j <= k; ++j) {
      if (s.coeffs[j].is_zero() || p.coeffs[k - j].is_zero()) continue;
      acc += (s.coeffs[j] * p.coeffs[k - j]) * ScalarQ(static_cast<long>(j));
    }
    p.coeffs[k] = acc * ScalarQ(mpq_class(1, k));
  }
  return p;
}

std::optional<RatMatrix> pade_reconstruct(const MatrixSeries& s, std::size_t guard) {
  RatMatrix out(s.dim, s.dim);
  for (std::size_t i = 0; i < s.dim; ++i) {
    for (std::size_t j = 0; j < s.dim; ++j) {
      auto f = pade_reconstruct(s.entry(i, j), guard);
      if (!f) return std::nullopt;
      out(i, j) = std::move(*f);
    }
  }
  return out;
}

MatrixSeries expand(const RatMatrix& f, Anchor anchor, std::size_t order) {
  MatrixSeries out = MatrixSeries::zero(anchor, f.rows(), order);
  for (std::size_t i = 0; i < f.rows(); ++i) {
    for (std::size_t j = 0; j < f.cols(); ++j) {
      const RatFunZ& x = f(i, j);
      if (x.is_zero()) continue;
      const int off = (anchor == Anchor::infinity) ? x.den().degree() - x.num().degree()
                                                   : x.num().valuation() - x.den().valuation();
      if (off < 0) throw std::domain_error("expand: matrix entry has a pole at the anchor");
      auto c = expand_range(x, anchor, 0, static_cast<int>(order));
      for (std::size_t k = 0; k < order; ++k) out.coeffs[k](i, j) = c[k];
    }
  }
  return out;
}

}  // namespace qlw
