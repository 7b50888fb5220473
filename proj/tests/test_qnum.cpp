// q-brackets and their identities, over both scalar backends.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <gmpxx.h>

#include <random>

#include "qeuler/qnum.hpp"

using namespace qeuler;

namespace {

/// Oracle: [x]_q as the literal polynomial sum 1 + q + ... + q^(x-1),
/// defined for every q including q = 1.
Rational bracket_by_sum(long x, const Rational& q) {
  Rational sum(0), pow(1);
  for (long i = 0; i < x; ++i) {
    sum += pow;
    pow *= q;
  }
  return sum;
}

}  // namespace

TEST_CASE("q-bracket: pinned values and polynomial-sum oracle") {
  RationalDomain rd(3);
  auto Q4 = make_q_from_rational(rd, Rational(4));
  CHECK(q_bracket(3, Q4) == Rational(21));  // 1 + 4 + 16
  CHECK(q_bracket(0, Q4) == Rational(0));
  CHECK(q_bracket(1, Q4) == Rational(1));

  auto Q95 = make_q_from_rational(RationalDomain(5), Rational(9, 5));
  CHECK(q_bracket(2, Q95) == Rational(14, 5));

  for (long x = 0; x <= 12; ++x) {
    CHECK(q_bracket(x, Q4) == bracket_by_sum(x, Rational(4)));
    CHECK(q_bracket(x, Q95) == bracket_by_sum(x, Rational(9, 5)));
  }
}

TEST_CASE("q-bracket at q = 1 is the integer itself") {
  RationalDomain rd(3);
  auto Q1 = make_q_from_rational(rd, Rational(1));
  for (long x : {0L, 1L, 7L, 40L}) CHECK(q_bracket(x, Q1) == Rational(x));

  // p-adic: q indistinguishable from 1 at the working precision.
  PadicDomain pd(3, 4);
  auto Qp1 = make_q(pd, pd.from_integer(1));
  CHECK(q_bracket(7, Qp1).residue() == 7);
}

TEST_CASE("signed bracket: pinned values and the unit identity") {
  RationalDomain rd(3);
  auto Q4 = make_q_from_rational(rd, Rational(4));
  CHECK(q_bracket_neg(3, Q4) == Rational(13));  // (1 + 64)/5
  CHECK(q_bracket_neg(1, Q4) == Rational(1));
  CHECK(q_bracket_neg(0, Q4) == Rational(0));
  CHECK_THROWS_AS(q_bracket_neg(-1, Q4), DomainError);

  // [x]_{-q} (1 + q) + (-q)^x = 1 for 0 <= x <= 64.
  for (long x = 0; x <= 64; ++x) {
    Rational lhs = q_bracket_neg(x, Q4) * two_q(Q4) + neg_q_pow(Q4, x);
    CHECK(lhs == Rational(1));
  }

  // At q = 1 the formula specializes to the parity indicator.
  auto Q1 = make_q_from_rational(rd, Rational(1));
  CHECK(q_bracket_neg(4, Q1) == Rational(0));
  CHECK(q_bracket_neg(5, Q1) == Rational(1));
}

TEST_CASE("two_q is 1 + q in every backend") {
  RationalDomain rd(3);
  CHECK(two_q(make_q_from_rational(rd, Rational(4))) == Rational(5));
  CHECK(two_q(make_q_from_rational(rd, Rational(1))) == Rational(2));
  CHECK(two_q(make_q_from_rational(rd, Rational(9, 5))) == Rational(14, 5));
  PadicDomain pd(5, 6);
  CHECK(two_q(make_q(pd, pd.from_integer(6))).residue() == 7);
}

TEST_CASE("cocycle identity [x+y] = [x] + q^x [y]") {
  RationalDomain rd(5);
  std::mt19937 rng(31415926);
  std::uniform_int_distribution<long> xy(0, 32);
  for (const Rational& q :
       {Rational(6), Rational(11, 6), Rational(4, 9), Rational(1)}) {
    auto Q = make_q_from_rational(rd, q);
    for (int i = 0; i < 25; ++i) {
      long x = xy(rng), y = xy(rng);
      Rational lhs = q_bracket(x + y, Q);
      Rational rhs =
          q_bracket(x, Q) + pow_integer(rd, Q.q, mpz_class(x)) * q_bracket(y, Q);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("cocycle identity with p-adic exponents via q^x = exp(x log q)") {
  const long p = 3, M = 8;
  PadicDomain pd(p, M);
  auto Q = make_q(pd, pd.from_integer(4));
  std::mt19937 rng(2718281);
  std::uniform_int_distribution<long> num(0, 3000);
  std::uniform_int_distribution<long> den(1, 50);
  for (int i = 0; i < 15; ++i) {
    long nx = num(rng), dx = den(rng), ny = num(rng), dy = den(rng);
    if (dx % p == 0 || dy % p == 0) continue;
    Padic x = Padic::from_rational(nx, dx, p, M);
    Padic y = Padic::from_rational(ny, dy, p, M);
    Padic lhs = q_bracket_scalar(x + y, Q);
    Padic rhs = q_bracket_scalar(x, Q) + q_pow(Q.q, x) * q_bracket_scalar(y, Q);
    CHECK(Padic::agree_mod(lhs, rhs, M - 1) == TriBool::kTrue);
  }
  // Integer p-adic exponents agree with the integer bracket.
  for (long x : {0L, 1L, 2L, 9L}) {
    Padic via_scalar = q_bracket_scalar(pd.from_integer(x), Q);
    Padic via_int = q_bracket(x, Q);
    CHECK(Padic::agree_mod(via_scalar, via_int, M - 1) == TriBool::kTrue);
  }
}

TEST_CASE("brackets approach the integer as q approaches 1") {
  // q = 1 + p^k: v_p([x]_q - x) >= k.
  RationalDomain rd(3);
  for (long k = 1; k <= 4; ++k) {
    Rational q = Rational(1) + Rational(pow_p(3, k));
    auto Q = make_q_from_rational(rd, q);
    for (long x : {2L, 5L, 10L, 31L}) {
      Rational diff = q_bracket(x, Q) - Rational(x);
      CHECK(diff.valuation(3) >= k);
    }
  }
}

TEST_CASE("non-integer bracket exponents are rejected where meaningless") {
  RationalDomain rd(3);
  auto Q = make_q_from_rational(rd, Rational(4));
  CHECK(q_bracket_scalar(Rational(7), Q) == q_bracket(7, Q));
  CHECK_THROWS_AS(q_bracket_scalar(Rational(1, 2), Q), DomainError);
}
