#include <doctest.h>

#include "qlw/qnumbers.hpp"

using qlw::ScalarQ;

namespace {

// [n] straight from the defining fraction.
ScalarQ qint_by_fraction(long n) {
  ScalarQ q = ScalarQ::q();
  return (q.pow(n) - q.pow(-n)) / (q - q.inverse());
}

}  // namespace

TEST_CASE("qint") {
  ScalarQ q = ScalarQ::q();
  CHECK(qlw::qint(0).is_zero());
  CHECK(qlw::qint(1).is_one());
  CHECK(qlw::qint(2) == q + q.inverse());
  for (long n = -7; n <= 7; ++n) {
    CHECK(qlw::qint(n) == qint_by_fraction(n));
    CHECK(qlw::qint(-n) == -qlw::qint(n));
  }
  // numeric parameter
  ScalarQ two(2L);
  CHECK(qlw::qint(3, two) == ScalarQ(mpq_class(21, 4)));
}

TEST_CASE("qfactorial") {
  ScalarQ q = ScalarQ::q();
  CHECK(qlw::qfactorial(0).is_one());
  CHECK(qlw::qfactorial(1).is_one());
  CHECK(qlw::qfactorial(3) == (q * q + ScalarQ(1L) + q.pow(-2)) * (q + q.inverse()));
  CHECK_THROWS_AS(qlw::qfactorial(-1), std::invalid_argument);
}

TEST_CASE("qbinom") {
  ScalarQ q = ScalarQ::q();
  CHECK(qlw::qbinom(2, 1) == q + q.inverse());
  CHECK(qlw::qbinom(5, 0).is_one());
  ScalarQ b42 = qlw::qbinom(4, 2);
  CHECK(b42 == qlw::qint(4) * qlw::qint(3) / qlw::qint(2));
  CHECK(b42.is_laurent_polynomial());
  CHECK_THROWS_AS(qlw::qbinom(3, -1), std::invalid_argument);
  for (long n = 0; n <= 8; ++n) {
    for (long k = 0; k <= n; ++k) {
      ScalarQ b = qlw::qbinom(n, k);
      CHECK(b == qlw::qbinom(n, n - k));
      CHECK(b.is_laurent_polynomial());
      CHECK(b.substitute_inverse() == b);
    }
    CHECK(qlw::qbinom(n, n + 1).is_zero());
  }
  // negative top by the product formula: [-1, k] = (-1)^k
  for (long k = 0; k <= 5; ++k) CHECK(qlw::qbinom(-1, k) == ScalarQ(k % 2 ? -1L : 1L));
  // Pascal rule [n, k] = q^{k-n}[n-1, k-1] + q^{k}[n-1, k]
  for (long n = 1; n <= 7; ++n) {
    for (long k = 1; k < n; ++k) {
      CHECK(qlw::qbinom(n, k) == q.pow(k - n) * qlw::qbinom(n - 1, k - 1) + q.pow(k) * qlw::qbinom(n - 1, k));
    }
  }
}

TEST_CASE("q-Pascal identities") {
  // r = 1, y = 1: 1 - q [2] = -q^2
  ScalarQ q = ScalarQ::q();
  CHECK(ScalarQ(1L) - q * qlw::qbinom(2, 1) == -(q * q));
  auto small = qlw::verify_qpascal_identities(0, 3);
  CHECK(small.passed());
  auto full = qlw::verify_qpascal_identities(8, 8);
  CHECK(full.passed());
  CHECK(full.entries().size() == 3);
}
