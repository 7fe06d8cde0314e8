#include <doctest.h>

#include "qlw/io.hpp"
#include "qlw/ktheory.hpp"

using qlw::AbelianCharacter;
using qlw::EquivClass;
using qlw::Monomial;
using qlw::QuiverInstance;
using qlw::RatFunZ;
using qlw::ScalarQ;
using qlw::ZPoly;

namespace {

ScalarQ q() { return ScalarQ::q(); }

EquivClass roots(std::initializer_list<const char*> names) {
  std::vector<Monomial> r;
  for (const char* n : names) r.push_back(Monomial::parse(n));
  return EquivClass(r);
}

QuiverInstance a1(EquivClass v, EquivClass w) { return {{{2}}, {std::move(v)}, {std::move(w)}}; }

}  // namespace

TEST_CASE("psi and lattice eigenvalues of characters") {
  CHECK(qlw::psi_eigen(AbelianCharacter{}) == RatFunZ(1L));
  CHECK(qlw::lattice_eigen(AbelianCharacter{}, -1) == ScalarQ(1L));

  const ScalarQ a(7L);
  AbelianCharacter one{{a}, {}};
  // q^-1 (q^2 z - a)/(z - a).
  RatFunZ expected = RatFunZ(ZPoly(std::vector<ScalarQ>{-a, q().pow(2)}), ZPoly(std::vector<ScalarQ>{-a, ScalarQ(1L)})) *
                     RatFunZ(q().inverse());
  CHECK(qlw::psi_eigen(one) == expected);
  CHECK(qlw::lattice_eigen(one, -1) == q() / a);

  AbelianCharacter two{{ScalarQ(3L)}, {q()}};
  CHECK(qlw::psi_eigen(one + two) == qlw::psi_eigen(one) * qlw::psi_eigen(two));
  CHECK(qlw::lattice_eigen(one + two, -1) == qlw::lattice_eigen(one, -1) * qlw::lattice_eigen(two, -1));
}

TEST_CASE("monomials parse and print canonically") {
  Monomial m = Monomial::parse("q^-1 * x1^2 * y");
  CHECK(m.exponent("q") == -1);
  CHECK(m.exponent("x1") == 2);
  CHECK(m.exponent("y") == 1);
  CHECK(Monomial::parse(m.to_string()) == m);
  CHECK(Monomial::parse("1").is_one());
  CHECK_THROWS(Monomial::parse("x^"));
}

TEST_CASE("exterior powers of a class") {
  CHECK(qlw::wedge_u(EquivClass{}).size() == 1);
  auto w1 = qlw::wedge_u(roots({"x"}));
  REQUIRE(w1.size() == 2);
  CHECK(w1[1] == qlw::LaurentPoly(Monomial::variable("x"), 1));
  auto w2 = qlw::wedge_u(roots({"x", "y"}));
  REQUIRE(w2.size() == 3);
  CHECK(w2[2] == qlw::LaurentPoly(Monomial::parse("x * y"), 1));

  // lim z^r wedge_{-q/z} E = (-q)^r det E.
  qlw::VirtualClass e{roots({"x", "y", "q^2 * x"}), {}};
  auto f = qlw::wedge_over_z(e, Monomial::q_power(1));
  CHECK(f.pole_order_at_zero() == 3);
  CHECK(f.limit_at_zero(3) == qlw::LaurentPoly(Monomial::parse("q^5 * x^2 * y"), -1));
}

TEST_CASE("ranks of the tautological complex") {
  auto c0 = qlw::complex_Ck(a1(EquivClass{}, roots({"1"})), 0);
  CHECK(c0.rank() == 1);
  CHECK(c0.positive == roots({"q^-1"}));
  CHECK(qlw::complex_Ck(a1(roots({"y"}), roots({"x1", "x2"})), 0).rank() == 0);

  QuiverInstance a2{{{2, -1}, {-1, 2}}, {roots({"y1"}), roots({"y2"})}, {roots({"x1"}), EquivClass{}}};
  CHECK(qlw::complex_Ck(a2, 0).rank() == 0);
}

TEST_CASE("psi action of the complex") {
  auto zero = qlw::nakajima_psi(qlw::VirtualClass{});
  CHECK(zero.series_at_infinity(3)[0] == qlw::LaurentPoly::constant(1));
  auto ck = qlw::complex_Ck(a1(EquivClass{}, roots({"1"})), 0);
  auto psi = qlw::nakajima_psi(ck);
  CHECK(psi.series_at_infinity(1)[0] == qlw::LaurentPoly(Monomial::q_power(1), 1));
}

TEST_CASE("determinant line two ways") {
  auto line = qlw::nakajima_lattice(a1(roots({"y"}), roots({"x1", "x2"})), 0);
  CHECK(line.agree);
  CHECK(line.from_formula.to_string() == "q^0 * x1^-1 * x2^-1 * y^2");

  QuiverInstance zero = a1(EquivClass{}, EquivClass{});
  CHECK(qlw::nakajima_lattice(zero, 0).agree);
  CHECK(qlw::verify_nakajima_node(zero, 0).passed());

  QuiverInstance a2{{{2, -1}, {-1, 2}}, {roots({"y1"}), roots({"y2"})}, {roots({"x1"}), EquivClass{}}};
  for (std::size_t k = 0; k < 2; ++k) CHECK(qlw::verify_nakajima_node(a2, k).passed());
  CHECK(qlw::verify_nakajima_node(a1(roots({"y"}), roots({"x1", "x2"})), 0).passed());
}

TEST_CASE("Cartan matrices are validated") {
  CHECK_NOTHROW(qlw::validate_ade({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}));
  CHECK_THROWS(qlw::validate_ade({{2, -2}, {-2, 2}}));
  CHECK_THROWS(qlw::validate_ade({{2, -1}, {-2, 2}}));
  CHECK_THROWS(qlw::validate_ade({{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}}));
}

TEST_CASE("quiver files") {
  nlohmann::json j = nlohmann::json::parse(R"({"cartan": [[2]], "V": [["y"]], "W": [["x1", "x2"]]})");
  auto inst = qlw::quiver_from_json(j);
  CHECK(inst.W[0].rank() == 2);
  CHECK_THROWS_AS(qlw::quiver_from_json(nlohmann::json::parse(R"({"cartan": [[2, -2], [-2, 2]]})")), qlw::InputError);
}
