#include <doctest.h>

#include "qlw/cp_engine.hpp"
#include "qlw/ktheory.hpp"
#include "qlw/qweyl.hpp"

using qlw::LoopRep;
using qlw::Matrix;
using qlw::RatFunZ;
using qlw::ScalarQ;
using qlw::ZPoly;

namespace {

ScalarQ q() { return ScalarQ::q(); }

// z - c.
ZPoly linear(const ScalarQ& c) { return ZPoly(std::vector<ScalarQ>{-c, ScalarQ(1L)}); }

}  // namespace

TEST_CASE("P+ of the two-dimensional module in closed form") {
  for (const ScalarQ& a : {ScalarQ(1L), q().pow(2), ScalarQ(-3L)}) {
    LoopRep rep = qlw::eval_module(1, a);
    auto p = qlw::cp_rational(rep, qlw::default_order(rep));
    CHECK(p.report.passed());
    // (z - a/q)/z on the top weight and z/(z - a q) on the bottom.
    CHECK(p.plus(0, 0) == RatFunZ(linear(a / q()), ZPoly::monomial(ScalarQ(1L), 1)));
    CHECK(p.plus(1, 1) == RatFunZ(ZPoly::monomial(ScalarQ(1L), 1), linear(a * q())));
    CHECK(p.plus(0, 1).is_zero());
    CHECK(p.plus(1, 0).is_zero());

    auto lc = qlw::limit_constant(rep, p);
    CHECK(lc.report.passed());
    Matrix expected(2, 2);
    expected(0, 0) = -(a / q());
    expected(1, 1) = -(a * q()).inverse();
    CHECK(lc.C == expected);
  }
}

TEST_CASE("trivial module has trivial series") {
  LoopRep rep = qlw::eval_module(0, ScalarQ(1L));
  auto cp = qlw::cp_series(rep, 6);
  CHECK(cp.plus == qlw::MatrixSeries::identity(qlw::Anchor::infinity, 1, 6));
  CHECK(qlw::verify_main_theorem(rep).passed());
}

TEST_CASE("difference equation detects a corrupted series") {
  LoopRep rep = qlw::eval_module(2, ScalarQ(1L));
  auto cp = qlw::cp_series(rep, qlw::default_order(rep));
  CHECK(qlw::check_difference_equation(rep, cp).passed());
  cp.plus.coeffs[2](0, 0) += ScalarQ(1L);
  CHECK_FALSE(qlw::check_difference_equation(rep, cp).passed());
}

TEST_CASE("straightening sides agree for small modules") {
  for (int n = 1; n <= 2; ++n) {
    LoopRep rep = qlw::eval_module(n, q());
    auto st = qlw::straightening_sides(rep, qlw::default_order(rep));
    CHECK(st.report.passed());
    CHECK(st.N == static_cast<unsigned>(n));
    CHECK(st.M >= 1);
  }
}

TEST_CASE("main theorem, kernel identities and Euler limit on evaluation modules") {
  for (int n = 1; n <= 2; ++n) {
    for (const ScalarQ& a : {ScalarQ(1L), ScalarQ(-1L), ScalarQ(mpq_class(3, 2))}) {
      LoopRep rep = qlw::eval_module(n, a);
      CHECK(qlw::verify_cp(rep).passed());
      CHECK(qlw::verify_main_theorem(rep).passed());
      CHECK(qlw::verify_kernel_identities(rep).passed());
      auto euler = qlw::euler_transform(rep);
      CHECK(euler.report.passed());
      CHECK(euler.limit == qlw::lattice_operator(rep).matrix);
    }
  }
}

TEST_CASE("main theorem on a direct sum") {
  LoopRep sum = qlw::direct_sum(qlw::eval_module(1, ScalarQ(1L)), qlw::eval_module(1, q().pow(2)));
  CHECK(qlw::verify_main_theorem(sum).passed());
  CHECK(qlw::verify_cp(sum).passed());
}

TEST_CASE("lattice operator under shift twists") {
  LoopRep rep = qlw::eval_module(2, ScalarQ(1L));
  for (const ScalarQ& zeta : {q(), ScalarQ(-1L), ScalarQ(2L)}) {
    CHECK(qlw::verify_shift_covariance(rep, zeta).passed());
  }
}

TEST_CASE("eigenvalues of the two-dimensional module") {
  const ScalarQ a(5L);
  LoopRep rep = qlw::eval_module(1, a);
  CHECK(qlw::verify_eigenvalues(rep).passed());
  // Top weight: a single zero at a/q; bottom: a single pole at a q.
  qlw::AbelianCharacter top{{a / q()}, {}};
  qlw::AbelianCharacter bottom{{}, {a * q()}};
  Matrix lattice = qlw::lattice_operator(rep).matrix;
  CHECK(lattice(0, 0) == qlw::lattice_eigen(top, -1));
  CHECK(lattice(1, 1) == qlw::lattice_eigen(bottom, -1));
  CHECK(lattice(0, 0) == q() * q() / a);
}

TEST_CASE("higher orders give the same rational P+") {
  LoopRep rep = qlw::eval_module(1, ScalarQ(1L));
  auto p1 = qlw::cp_rational(rep, qlw::default_order(rep));
  auto p2 = qlw::cp_rational(rep, qlw::default_order(rep) + 6);
  CHECK(p1.plus == p2.plus);
  CHECK(p1.minus == p2.minus);
}
