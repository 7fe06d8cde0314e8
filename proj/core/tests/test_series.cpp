#include <doctest.h>

#include <random>

#include "qlw/series.hpp"

using qlw::Anchor;
using qlw::LaurentSeries;
using qlw::RatFunZ;
using qlw::ScalarQ;
using qlw::ZPoly;

namespace {

ScalarQ q() { return ScalarQ::q(); }

// 1 - c/z as a function of z.
RatFunZ one_minus_over_z(const ScalarQ& c) {
  return RatFunZ(ZPoly(std::vector<ScalarQ>{-c, ScalarQ(1L)}), ZPoly::monomial(ScalarQ(1L), 1));
}

}  // namespace

TEST_CASE("expansion at infinity and zero") {
  const ScalarQ a = ScalarQ::parse("3*q^2");
  RatFunZ geometric = one_minus_over_z(a).inverse();
  LaurentSeries s = qlw::expand(geometric, Anchor::infinity, 3);
  CHECK(s.offset == 0);
  CHECK(s.coeffs == std::vector<ScalarQ>{ScalarQ(1L), a, a * a});

  LaurentSeries z0 = qlw::expand(RatFunZ::z_power(1), Anchor::zero, 2);
  CHECK(z0.offset == 1);
  CHECK(z0.coeffs == std::vector<ScalarQ>{ScalarQ(1L), ScalarQ()});

  // (q^2 z - w)/(z - q^2 w): long division gives q^2 + (q^4 - 1) w / z + ...
  const ScalarQ w(5L);
  RatFunZ f(ZPoly(std::vector<ScalarQ>{-w, q() * q()}), ZPoly(std::vector<ScalarQ>{-(q() * q()) * w, ScalarQ(1L)}));
  LaurentSeries lf = qlw::expand(f, Anchor::infinity, 3);
  CHECK(lf.coeffs[0] == q() * q());
  CHECK(lf.coeffs[1] == (q().pow(4) - ScalarQ(1L)) * w);
  // next term of the division: (q^4 - 1) w * q^2 w
  CHECK(lf.coeffs[2] == (q().pow(4) - ScalarQ(1L)) * w * q() * q() * w);
}

TEST_CASE("Pade reconstruction") {
  const ScalarQ a = q() * q();
  RatFunZ geometric = one_minus_over_z(a).inverse();
  auto r8 = qlw::pade_reconstruct(qlw::expand(geometric, Anchor::infinity, 8), 4);
  REQUIRE(r8);
  CHECK(*r8 == geometric);
  auto r12 = qlw::pade_reconstruct(qlw::expand(geometric, Anchor::infinity, 12));
  REQUIRE(r12);
  CHECK(*r12 == geometric);

  LaurentSeries zero;
  zero.coeffs.assign(10, ScalarQ());
  auto rz = qlw::pade_reconstruct(zero);
  REQUIRE(rz);
  CHECK(rz->is_zero());

  const ScalarQ w = ScalarQ::parse("2*q^-1");
  RatFunZ laurent = one_minus_over_z(q() * q() * w) * one_minus_over_z(w);
  auto rl = qlw::pade_reconstruct(qlw::expand(laurent, Anchor::infinity, 12));
  REQUIRE(rl);
  CHECK(*rl == laurent);

  // too short a series for a degree-3 denominator is a failure signal
  RatFunZ cubic = (one_minus_over_z(ScalarQ(2L)) * one_minus_over_z(ScalarQ(3L)) * one_minus_over_z(q())).inverse();
  CHECK_FALSE(qlw::pade_reconstruct(qlw::expand(cubic, Anchor::infinity, 12)));
  auto rc = qlw::pade_reconstruct(qlw::expand(cubic, Anchor::infinity, 16));
  REQUIRE(rc);
  CHECK(*rc == cubic);
}

TEST_CASE("two-anchor consistency and offsets") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> c(1, 4);
  for (int i = 0; i < 20; ++i) {
    // (z - a)(z - b)/((z - c)(z - d)) with nonzero roots: regular at both anchors
    auto root = [&]() { return ScalarQ(static_cast<long>(c(rng))) * q().pow(c(rng) - 2); };
    ZPoly num = ZPoly(std::vector<ScalarQ>{-root(), ScalarQ(1L)}) * ZPoly(std::vector<ScalarQ>{-root(), ScalarQ(1L)});
    ZPoly den = ZPoly(std::vector<ScalarQ>{-root(), ScalarQ(1L)}) * ZPoly(std::vector<ScalarQ>{-root(), ScalarQ(1L)});
    RatFunZ f(num, den);
    auto at_inf = qlw::pade_reconstruct(qlw::expand(f, Anchor::infinity, 16));
    auto at_zero = qlw::pade_reconstruct(qlw::expand(f, Anchor::zero, 16));
    REQUIRE(at_inf);
    REQUIRE(at_zero);
    CHECK(*at_inf == f);
    CHECK(*at_zero == f);
    // shifted by z^3 and z^-2
    RatFunZ g = f * RatFunZ::z_power(3);
    auto g_inf = qlw::pade_reconstruct(qlw::expand(g, Anchor::infinity, 16));
    REQUIRE(g_inf);
    CHECK(*g_inf == g);
    RatFunZ h = f * RatFunZ::z_power(-2);
    auto h_zero = qlw::pade_reconstruct(qlw::expand(h, Anchor::zero, 16));
    REQUIRE(h_zero);
    CHECK(*h_zero == h);
  }
}

TEST_CASE("limit with prefactor") {
  const ScalarQ a = q() + ScalarQ(1L);
  CHECK(qlw::limit_with_prefactor(RatFunZ::z_power(-1), Anchor::zero, 1).is_one());
  CHECK(qlw::limit_with_prefactor(one_minus_over_z(a), Anchor::zero, 1) == -a);
  CHECK(qlw::limit_with_prefactor(RatFunZ(1L), Anchor::zero, 1).is_zero());
  CHECK_THROWS_AS(qlw::limit_with_prefactor(RatFunZ::z_power(-2), Anchor::zero, 1), qlw::PoleRemains);
  CHECK(qlw::limit_with_prefactor(one_minus_over_z(a), Anchor::infinity, 0).is_one());
  CHECK_THROWS_AS(qlw::limit_with_prefactor(RatFunZ::z_power(1), Anchor::infinity, 0), qlw::PoleRemains);
}

TEST_CASE("matrix series: log/exp inverse pair and entrywise reconstruction") {
  const std::size_t order = 14;
  qlw::RatMatrix f(2, 2);
  f(0, 0) = one_minus_over_z(q()).inverse();
  f(1, 1) = one_minus_over_z(ScalarQ(3L)) * one_minus_over_z(q() * q()).inverse();
  auto s = qlw::expand(f, Anchor::infinity, order);
  auto l = qlw::log_commuting(s);
  auto back = qlw::exp_commuting(l);
  CHECK(back == s);
  auto inv = qlw::inverse(s);
  CHECK(inv * s == qlw::MatrixSeries::identity(Anchor::infinity, 2, order));

  qlw::RatMatrix g(2, 2);
  g(0, 0) = RatFunZ(2L);
  g(0, 1) = one_minus_over_z(ScalarQ(-1L));
  g(1, 0) = RatFunZ::z_power(-1);
  g(1, 1) = one_minus_over_z(q()).inverse();
  auto product = qlw::pade_reconstruct(qlw::expand(f, Anchor::infinity, 20) * qlw::expand(g, Anchor::infinity, 20));
  REQUIRE(product);
  CHECK(*product == f * g);
}
