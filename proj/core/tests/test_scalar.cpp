#include <doctest.h>

#include <random>

#include "qlw/scalar.hpp"

using qlw::ScalarQ;

namespace {

ScalarQ random_scalar(std::mt19937& rng) {
  std::uniform_int_distribution<int> coeff(-4, 4);
  std::uniform_int_distribution<int> deg(0, 3);
  std::uniform_int_distribution<int> sh(-3, 3);
  auto poly = [&](bool nonzero) {
    for (;;) {
      std::vector<mpz_class> c(deg(rng) + 1);
      for (auto& x : c) x = coeff(rng);
      qlw::IntPoly p(std::move(c));
      if (!nonzero || !p.is_zero()) return p;
    }
  };
  return ScalarQ::from_parts(poly(false), poly(true), sh(rng));
}

}  // namespace

TEST_CASE("canonical form") {
  ScalarQ q = ScalarQ::q();
  CHECK((q * q.inverse()).is_one());
  CHECK((q - q).is_zero());
  CHECK((q + q.inverse()).to_string() == "1*q^1+1*q^-1");
  // (q^2 - 1)/(q - 1) reduces to q + 1
  ScalarQ r = (q * q - ScalarQ(1L)) / (q - ScalarQ(1L));
  CHECK(r == q + ScalarQ(1L));
  CHECK(r.is_laurent_polynomial());
  // sign lives in the numerator
  ScalarQ s = ScalarQ(1L) / (ScalarQ(-2L) * q - ScalarQ(1L));
  CHECK(s.den().lead() > 0);
  CHECK(ScalarQ(mpq_class(6, 4)).to_string() == "(3*q^0)/(2*q^0)");
}

TEST_CASE("parser round trip and grammar") {
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    ScalarQ x = random_scalar(rng);
    CHECK(ScalarQ::parse(x.to_string()) == x);
  }
  ScalarQ q = ScalarQ::q();
  CHECK(ScalarQ::parse("q^2") == q * q);
  CHECK(ScalarQ::parse("q^-1") == q.inverse());
  CHECK(ScalarQ::parse("q^(-3)") == q.pow(-3));
  CHECK(ScalarQ::parse("3/2") == ScalarQ(mpq_class(3, 2)));
  CHECK(ScalarQ::parse("-1") == ScalarQ(-1L));
  CHECK(ScalarQ::parse(" (q - q^-1) * (q + 1) / 2 ") == (q - q.inverse()) * (q + ScalarQ(1L)) / ScalarQ(2L));
  CHECK_THROWS_AS(ScalarQ::parse("q +"), std::invalid_argument);
  CHECK_THROWS_AS(ScalarQ::parse("x"), std::invalid_argument);
  CHECK_THROWS_AS(ScalarQ::parse("1/0"), std::invalid_argument);
}

TEST_CASE("field axioms on random samples") {
  std::mt19937 rng(11);
  for (int i = 0; i < 150; ++i) {
    ScalarQ a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a - a).is_zero());
    if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
  }
}

TEST_CASE("specialization commutes with arithmetic") {
  std::mt19937 rng(13);
  const mpq_class points[] = {mpq_class(2), mpq_class(-3), mpq_class(1, 2), mpq_class(5, 3)};
  for (int i = 0; i < 100; ++i) {
    ScalarQ a = random_scalar(rng), b = random_scalar(rng);
    for (const auto& q0 : points) {
      mpq_class va, vb;
      try {
        va = a.evaluate(q0);
        vb = b.evaluate(q0);
      } catch (const std::domain_error&) {
        continue;
      }
      CHECK((a + b).evaluate(q0) == va + vb);
      CHECK((a * b).evaluate(q0) == va * vb);
      if (vb != 0) CHECK((a / b).evaluate(q0) == va / vb);
    }
  }
}

TEST_CASE("q -> 1/q substitution") {
  std::mt19937 rng(17);
  for (int i = 0; i < 100; ++i) {
    ScalarQ a = random_scalar(rng), b = random_scalar(rng);
    CHECK(a.substitute_inverse().substitute_inverse() == a);
    CHECK((a * b).substitute_inverse() == a.substitute_inverse() * b.substitute_inverse());
    try {
      mpq_class v = a.evaluate(mpq_class(1, 3));
      CHECK(a.substitute_inverse().evaluate(mpq_class(3)) == v);
    } catch (const std::domain_error&) {
    }
  }
}

TEST_CASE("numeric q rejects degenerate values") {
  CHECK_THROWS_AS(qlw::NumericQ::checked(mpq_class(0)), std::invalid_argument);
  CHECK_THROWS_AS(qlw::NumericQ::checked(mpq_class(1)), std::invalid_argument);
  CHECK_THROWS_AS(qlw::NumericQ::checked(mpq_class(-1)), std::invalid_argument);
  CHECK(qlw::NumericQ::checked(mpq_class(3, 2)).value == mpq_class(3, 2));
}
