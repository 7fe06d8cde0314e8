#include <doctest.h>

#include "qlw/qnumbers.hpp"
#include "qlw/qweyl.hpp"

using qlw::LoopRep;
using qlw::Matrix;
using qlw::ScalarQ;

namespace {

ScalarQ q() { return ScalarQ::q(); }

bool is_signed_q_power(const ScalarQ& s) {
  return s.is_monomial() && (s.num()[0] == 1 || s.num()[0] == -1) && s.den().is_one();
}

}  // namespace

TEST_CASE("q-exponential of nilpotent matrices") {
  CHECK(qlw::q_exp(Matrix(3, 3), q()) == Matrix::identity(3));
  Matrix x(2, 2);
  x(0, 1) = ScalarQ(5L);
  CHECK(qlw::q_exp(x, q()) == Matrix::identity(2) + x);

  // exp_q(X) exp_{q^-1}(-X) = 1 for nilpotent X.
  LoopRep rep = qlw::eval_module(3, ScalarQ(1L));
  for (const Matrix* m : {&rep.E[0], &rep.F[0]}) {
    CHECK(qlw::q_exp(*m, q()) * qlw::q_exp(-*m, q().inverse()) == Matrix::identity(4));
  }
  Matrix one = Matrix::identity(2);
  CHECK_THROWS_AS(qlw::q_exp(one, q()), std::invalid_argument);
}

TEST_CASE("closed form of the Weyl operator") {
  CHECK(qlw::s_closed_form(0) == Matrix::identity(1));
  Matrix s1 = qlw::s_closed_form(1);
  CHECK(s1(1, 0) == -q());
  CHECK(s1(0, 1) == ScalarQ(1L));
  Matrix s2 = qlw::s_closed_form(2);
  CHECK(s2(2, 0) == q().pow(2));
  CHECK(s2(1, 1) == -q().pow(2));
  CHECK(s2(0, 2) == ScalarQ(1L));
}

TEST_CASE("triple q-exponential agrees with the closed form") {
  for (int n = 0; n <= 4; ++n) {
    LoopRep rep = qlw::eval_module(n, ScalarQ(2L));
    qlw::WeylOperator s = qlw::weyl_triple(rep.e(0), rep.f(0), rep.K, rep.space.weights);
    CHECK(s.matrix == qlw::s_closed_form(n));
  }
  // The same at a rational specialization.
  const ScalarQ q0(mpq_class(3, 2));
  LoopRep rep = qlw::eval_module(3, ScalarQ(2L), {}, q0);
  CHECK(qlw::weyl_triple(rep.e(0), rep.f(0), rep.K, rep.space.weights, q0).matrix == qlw::s_closed_form(3, q0));
}

TEST_CASE("lattice operator preserves weights and commutes with psi") {
  CHECK(qlw::lattice_operator(qlw::eval_module(0, ScalarQ(4L))).matrix == Matrix::identity(1));
  for (int n = 1; n <= 3; ++n) {
    LoopRep rep = qlw::eval_module(n, ScalarQ::parse("3*q"));
    Matrix l = qlw::lattice_operator(rep).matrix;
    CHECK(l.is_diagonal());
    CHECK(qlw::commutator(l, rep.psi_plus[1]).is_zero());
    ScalarQ det = qlw::determinant(l);
    CHECK(is_signed_q_power(det));
  }
  LoopRep a = qlw::eval_module(1, ScalarQ(2L));
  LoopRep b = qlw::eval_module(2, ScalarQ(5L));
  Matrix la = qlw::lattice_operator(a).matrix;
  Matrix lb = qlw::lattice_operator(b).matrix;
  Matrix ls = qlw::lattice_operator(qlw::direct_sum(a, b)).matrix;
  for (std::size_t i = 0; i < 2; ++i) CHECK(ls(i, i) == la(i, i));
  for (std::size_t i = 0; i < 3; ++i) CHECK(ls(2 + i, 2 + i) == lb(i, i));
  CHECK(ls(0, 3).is_zero());
}

TEST_CASE("conjugation by the lattice operator shifts modes by two") {
  CHECK(qlw::check_conjugation(qlw::eval_module(0, ScalarQ(1L))).passed());
  CHECK(qlw::check_conjugation(qlw::eval_module(1, ScalarQ(1L))).passed());
  CHECK(qlw::check_conjugation(qlw::eval_module(2, q())).passed());
  CHECK(qlw::check_conjugation(qlw::direct_sum(qlw::eval_module(1, ScalarQ(2L)), qlw::eval_module(1, ScalarQ(7L))))
            .passed());
}
