#include "qlw/qnumbers.hpp"

#include <stdexcept>
#include <string>

namespace qlw {

namespace {

ScalarQ sign_pow(long e) { return (e % 2 == 0) ? ScalarQ(1L) : ScalarQ(-1L); }

}  // namespace

ScalarQ qint(long n, const ScalarQ& q) {
  if (n == 0) return {};
  if (n < 0) return -qint(-n, q);
  // [n] = q^{n-1} + q^{n-3} + ... + q^{1-n}
  if (q == ScalarQ::q()) {
    std::vector<mpz_class> c(2 * n - 1);
    for (long i = 0; i < n; ++i) c[2 * i] = 1;
    return ScalarQ::from_parts(IntPoly(std::move(c)), IntPoly(mpz_class(1)), static_cast<int>(1 - n));
  }
  ScalarQ acc;
  ScalarQ step = q * q;
  ScalarQ term = q.pow(1 - n);
  for (long i = 0; i < n; ++i) {
    acc += term;
    term *= step;
  }
  return acc;
}

ScalarQ qfactorial(long n, const ScalarQ& q) {
  if (n < 0) throw std::invalid_argument("qfactorial: negative argument " + std::to_string(n));
  ScalarQ acc(1L);
  for (long i = 2; i <= n; ++i) acc *= qint(i, q);
  return acc;
}

ScalarQ qbinom(long n, long k, const ScalarQ& q) {
  if (k < 0) throw std::invalid_argument("qbinom: negative lower index " + std::to_string(k));
  ScalarQ num(1L);
  for (long i = 0; i < k; ++i) num *= qint(n - i, q);
  return num / qfactorial(k, q);
}

Report verify_qpascal_identities(int r_max, int y_max) {
  if (r_max < 0 || y_max < 0) throw std::invalid_argument("verify_qpascal_identities: negative bound");
  Report report;
  const ScalarQ q = ScalarQ::q();
  bool expansion_ok = true, alternating_ok = true, reduction_ok = true;
  nlohmann::json expansion_witness, alternating_witness, reduction_witness;

  for (int r = 0; r <= r_max; ++r) {
    for (int y = r; y <= y_max; ++y) {
      for (int l = 0; l <= r && expansion_ok; ++l) {
        ScalarQ rhs;
        for (int j = 0; j <= l; ++j) {
          rhs += q.pow(-(l - j) * y + l * j) * qbinom(l, j) * qbinom(y, j);
        }
        ScalarQ lhs = qbinom(y + l, l);
        if (!(lhs == rhs)) {
          expansion_ok = false;
          expansion_witness = {{"r", r}, {"y", y}, {"l", l}, {"lhs", lhs.to_string()}, {"rhs", rhs.to_string()}};
        }
      }

      if (alternating_ok) {
        ScalarQ lhs;
        for (int l = 0; l <= r; ++l) {
          lhs += sign_pow(l) * q.pow(l * (y - r + 1)) * qbinom(r, l) * qbinom(y + l, l);
        }
        ScalarQ rhs = sign_pow(r) * q.pow(r * (y + 1)) * qbinom(y, r);
        if (!(lhs == rhs)) {
          alternating_ok = false;
          alternating_witness = {{"r", r}, {"y", y}, {"lhs", lhs.to_string()}, {"rhs", rhs.to_string()}};
        }
      }

      for (int j = 0; j <= r && reduction_ok; ++j) {
        ScalarQ inner;
        for (int i = 0; i <= r - j; ++i) {
          inner += sign_pow(i) * q.pow(-i * (r - j - 1)) * qbinom(r - j, i);
        }
        ScalarQ lhs = sign_pow(j) * qbinom(r, j) * q.pow(j * (y - r + j + 1)) * inner;
        ScalarQ rhs = (j < r) ? ScalarQ() : sign_pow(r) * q.pow(r * (y + 1));
        if (!(lhs == rhs)) {
          reduction_ok = false;
          reduction_witness = {{"r", r}, {"y", y}, {"j", j}, {"lhs", lhs.to_string()}, {"rhs", rhs.to_string()}};
        }
      }
    }
  }

  const std::string range = "0 <= r <= " + std::to_string(r_max) + ", r <= y <= " + std::to_string(y_max);
  report.add("qpascal-expansion", "iterated q-Pascal expansion of [y+l, l], " + range, expansion_ok,
             expansion_witness);
  report.add("qpascal-alternating-sum", "alternating q-binomial sum equals (-1)^r q^{r(y+1)} [y, r], " + range,
             alternating_ok, alternating_witness);
  report.add("qpascal-reduction", "coefficient of [y, j] after expansion vanishes for j < r, " + range,
             reduction_ok, reduction_witness);
  return report;
}

}  // namespace qlw
