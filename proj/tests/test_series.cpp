// Truncated exponential generating function of the deformed numbers and
// the degree-by-degree difference equation its coefficients satisfy.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <gmpxx.h>

#include <random>
#include <vector>

#include "qeuler/series.hpp"

using namespace qeuler;

namespace {

/// Oracle: coefficients of 2/(e^t + 1) by power-series long division.
std::vector<Rational> division_oracle(long K) {
  std::vector<mpq_class> fact(static_cast<std::size_t>(K) + 1);
  fact[0] = 1;
  for (long n = 1; n <= K; ++n)
    fact[static_cast<std::size_t>(n)] =
        fact[static_cast<std::size_t>(n - 1)] * n;
  std::vector<mpq_class> b(static_cast<std::size_t>(K) + 1);
  b[0] = 1;
  for (long n = 1; n <= K; ++n) {
    mpq_class acc = 0;
    for (long k = 0; k < n; ++k)
      acc += b[static_cast<std::size_t>(k)] /
             fact[static_cast<std::size_t>(n - k)];
    b[static_cast<std::size_t>(n)] = -acc / 2;
  }
  std::vector<Rational> out;
  for (long n = 0; n <= K; ++n)
    out.push_back(Rational(mpq_class(b[static_cast<std::size_t>(n)] *
                                     fact[static_cast<std::size_t>(n)])));
  return out;
}

}  // namespace

TEST_CASE("coefficient table: pinned prefix and leading normalization") {
  RationalDomain rd(3);
  auto Q = make_q_from_rational(rd, Rational(4));
  auto egf = build_egf(Q, 2);
  CHECK(egf.degree() == 2);
  CHECK(egf.coeffs[0] == Rational(1));
  CHECK(egf.coeffs[1] == Rational(-4, 17));
  CHECK(egf.coeffs[2] == Rational(12, 221));

  auto egf0 = build_egf(Q, 0);
  CHECK(egf0.degree() == 0);
  CHECK(egf0.coeffs[0] == Rational(1));
}

TEST_CASE("difference equation: hand-substituted low degrees") {
  RationalDomain rd(3);
  auto Q = make_q_from_rational(rd, Rational(4));
  auto residuals = q_difference_residuals(build_egf(Q, 1));

  // Degree 0 by hand: q*c_0 + c_0 - (1+q) = 4 + 1 - 5.
  CHECK(residuals[0] == Rational(4) + Rational(1) - Rational(5));
  CHECK(residuals[0] == Rational(0));
  // Degree 1 by hand:
  // C(1,0) q c_0 + C(1,1) q^2 c_1 + c_1 = 4*1 + 16*(-4/17) + (-4/17).
  Rational by_hand = Rational(4) * Rational(1) +
                     Rational(16) * Rational(-4, 17) + Rational(-4, 17);
  CHECK(residuals[1] == by_hand);
  CHECK(residuals[1] == Rational(0));
}

TEST_CASE("difference equation holds identically at seeded rational q") {
  RationalDomain rd(3);
  std::mt19937 rng(90210);
  std::uniform_int_distribution<long> num(-60, 60);
  std::uniform_int_distribution<long> den(1, 30);
  int done = 0;
  while (done < 10) {
    Rational q(num(rng), den(rng));
    if (q == Rational(1) || q == Rational(-1) || q.is_zero()) continue;
    auto Q = make_q_from_rational(rd, q);
    auto residuals = q_difference_residuals(build_egf(Q, 12));
    REQUIRE(residuals.size() == 13);
    for (const Rational& r : residuals) CHECK(r == Rational(0));
    ++done;
  }
}

TEST_CASE("difference equation in the p-adic backend") {
  PadicDomain pd(3, 10);
  auto Q = make_q(pd, pd.from_integer(4));
  auto residuals = q_difference_residuals(build_egf(Q, 6));
  for (const Padic& r : residuals) CHECK(r.valuation_lower_bound() >= 4);
}

TEST_CASE("coefficients realize the stabilized integral, degree by degree") {
  PadicDomain pd(3, 10);
  auto Q = make_q(pd, pd.from_integer(4));
  auto egf = build_egf(Q, 3);
  for (long k = 0; k <= 3; ++k) {
    auto via_integral = q_euler_integral(k, Q, 6);
    REQUIRE(via_integral.converged);
    CHECK(pd.agree_mod(egf.coeffs[static_cast<std::size_t>(k)],
                       via_integral.value, 6) == TriBool::kTrue);
  }
}

TEST_CASE("the q = 1 column is the classical expansion of 2/(e^t + 1)") {
  RationalDomain rd(3);
  auto egf = build_egf_classical(rd, 10);
  auto oracle = division_oracle(10);
  REQUIRE(egf.coeffs.size() == oracle.size());
  for (std::size_t i = 0; i < oracle.size(); ++i)
    CHECK(egf.coeffs[i] == oracle[i]);
  CHECK(egf.coeffs[1] == Rational(-1, 2));
  CHECK(egf.coeffs[3] == Rational(1, 4));

  // At q = 1 the difference equation degenerates to the umbral recurrence;
  // residuals still vanish identically.
  auto residuals = q_difference_residuals(egf);
  for (const Rational& r : residuals) CHECK(r == Rational(0));
}

TEST_CASE("the constant-term clarification is part of the public output") {
  CHECK(q_difference_note().find("constant term") != std::string::npos);
  CHECK(q_difference_note().find("1+q") != std::string::npos);
}
