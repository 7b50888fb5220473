// Stabilized limits of signed Riemann sums: level sums, convergence
// detection, the translation identity, and the q = 1 specialization.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <gmpxx.h>

#include <vector>

#include "qeuler/integral.hpp"

using namespace qeuler;

namespace {

/// Oracle: level-N sum written out directly from its definition with plain
/// rational arithmetic, no shared-walk machinery.
Rational riemann_oracle(long m, long d, long N, long p, const Rational& q) {
  RationalDomain rd(p);
  mpz_class count = d * pow_p(p, N);
  Rational raw(0);
  for (mpz_class x = 0; x < count; ++x) {
    // [x]_q^m as a literal geometric sum, then the signed weight.
    Rational bracket(0), pw(1);
    for (mpz_class i = 0; i < x; ++i) {
      bracket += pw;
      pw *= q;
    }
    Rational term = pow_integer(rd, bracket, mpz_class(m)) *
                    pow_integer(rd, q, x);
    raw += (mpz_odd_p(x.get_mpz_t()) ? -term : term);
  }
  // Divide by [count]_{-q} = (1 - (-q)^count)/(1 + q); count is odd.
  Rational den = (Rational(1) + pow_integer(rd, q, count)) / (Rational(1) + q);
  return raw / den;
}

}  // namespace

TEST_CASE("level sums: pinned 3-term case and the direct oracle") {
  RationalDomain rd(3);
  auto Q = make_q_from_rational(rd, Rational(4));
  MeasureContext<RationalDomain> ctx(Q);

  // (0 - 4*1 + 16*5) / 13 expanded by hand.
  auto f1 = Integrand<RationalDomain>::bracket_power(Q, 1);
  CHECK(riemann_sum(f1, ctx, 1) == Rational(76, 13));
  CHECK(riemann_sum(f1, ctx, 1) == riemann_oracle(1, 1, 1, 3, Rational(4)));

  for (long m = 0; m <= 3; ++m) {
    auto f = Integrand<RationalDomain>::bracket_power(Q, m);
    for (long N = 1; N <= 3; ++N)
      CHECK(riemann_sum(f, ctx, N) == riemann_oracle(m, 1, N, 3, Rational(4)));
  }

  auto one = Integrand<RationalDomain>::constant_one(rd);
  for (long N = 1; N <= 4; ++N) CHECK(riemann_sum(one, ctx, N) == Rational(1));

  CHECK_THROWS_AS(riemann_sum(f1, ctx, 0), DomainError);
}

TEST_CASE("level sums at q = 1 are plain alternating sums") {
  RationalDomain rd(3);
  auto Q = make_q_from_rational(rd, Rational(1));
  MeasureContext<RationalDomain> ctx(Q);
  auto f = Integrand<RationalDomain>::bracket_power(Q, 1);
  CHECK(riemann_sum(f, ctx, 2) == Rational(4));  // 0-1+2-...+8
}

TEST_CASE("stabilized integration reaches the known limits") {
  RationalDomain rd(3);
  auto Q = make_q_from_rational(rd, Rational(4));
  MeasureContext<RationalDomain> ctx(Q);

  auto r0 = integrate(Integrand<RationalDomain>::constant_one(rd), ctx, 6);
  CHECK(r0.converged);
  CHECK(r0.value == Rational(1));
  CHECK(r0.levels_used == 1);  // constant stabilizes immediately

  // In-test closed-form oracles: -q/(1+q^2) and the two-term alternating sum.
  Rational e1 = Rational(-4) / Rational(1 + 16);
  auto r1 = integrate(Integrand<RationalDomain>::bracket_power(Q, 1), ctx, 6);
  CHECK(r1.converged);
  CHECK((r1.value - e1).valuation(3) >= 6);
  CHECK(r1.achieved_precision >= 6);

  Rational e2 = Rational(5) * Rational(1, 9) *
                (Rational(1, 5) - Rational(2, 17) + Rational(1, 65));
  CHECK(e2 == Rational(12, 221));
  auto r2 = integrate(Integrand<RationalDomain>::bracket_power(Q, 2), ctx, 6);
  CHECK(r2.converged);
  CHECK((r2.value - e2).valuation(3) >= 6);
}

TEST_CASE("p-adic backend integration matches the exact backend") {
  PadicDomain pd(3, 14);
  auto Q = make_q(pd, pd.from_integer(4));
  MeasureContext<PadicDomain> ctx(Q);
  auto r = integrate(Integrand<PadicDomain>::bracket_power(Q, 1), ctx, 6);
  CHECK(r.converged);
  CHECK(r.achieved_precision >= 6);
  Padic expect = Padic::from_rational(-4, 17, 3, 6);
  CHECK(Padic::agree_mod(r.value, expect, 6) == TriBool::kTrue);
  CHECK(r.levels_used <= 7);
}

TEST_CASE("per-level values form a p-adically Cauchy sequence") {
  RationalDomain rd(3);
  auto Q = make_q_from_rational(rd, Rational(4));
  MeasureContext<RationalDomain> ctx(Q);
  auto r = integrate(Integrand<RationalDomain>::bracket_power(Q, 2), ctx, 6);
  const auto& lv = r.level_values;
  REQUIRE(lv.size() >= 3);
  long prev = -100;
  for (std::size_t i = 1; i < lv.size(); ++i) {
    long gain = (lv[i] - lv[i - 1]).valuation(3);
    CHECK(gain >= static_cast<long>(i) - 2);  // refinement gains digits
    CHECK(gain >= prev - 1);                  // and does not regress
    prev = gain;
  }
}

TEST_CASE("level refinement gains at least level-minus-degree digits") {
  // v(S_{N+1} - S_N) >= N + 1 - m for f = [x]_q^m, q = 1 + p.
  RationalDomain rd(3);
  auto Q = make_q_from_rational(rd, Rational(4));
  MeasureContext<RationalDomain> ctx(Q);
  for (long m = 0; m <= 4; ++m) {
    auto f = Integrand<RationalDomain>::bracket_power(Q, m);
    Rational prev = riemann_sum(f, ctx, 1);
    for (long N = 2; N <= 5; ++N) {
      Rational cur = riemann_sum(f, ctx, N);
      CHECK((cur - prev).valuation(3) >= N - m);
      prev = cur;
    }
  }
}

TEST_CASE("integration is linear") {
  RationalDomain rd(3);
  auto Q = make_q_from_rational(rd, Rational(4));
  MeasureContext<RationalDomain> ctx(Q);
  auto f = Integrand<RationalDomain>::bracket_power(Q, 1);
  auto g = Integrand<RationalDomain>::bracket_power(Q, 2);
  Rational alpha(2), beta(-3, 7);
  Integrand<RationalDomain> combo(
      "2*bracket^1 - 3/7*bracket^2", 2, 1,
      [f, g, alpha, beta](const mpz_class& x, const Rational& qx) {
        return alpha * f(x, qx) + beta * g(x, qx);
      });
  auto rc = integrate(combo, ctx, 6);
  auto rf = integrate(f, ctx, 6);
  auto rg = integrate(g, ctx, 6);
  REQUIRE(rc.converged);
  Rational expect = alpha * rf.value + beta * rg.value;
  CHECK((rc.value - expect).valuation(3) >= 6);
}

TEST_CASE("a shared walk integrates a family in one pass") {
  RationalDomain rd(3);
  auto Q = make_q_from_rational(rd, Rational(4));
  MeasureContext<RationalDomain> ctx(Q);
  std::vector<Integrand<RationalDomain>> fs;
  for (long m = 0; m <= 3; ++m)
    fs.push_back(Integrand<RationalDomain>::bracket_power(Q, m));
  auto many = integrate_many(fs, ctx, 6);
  REQUIRE(many.size() == 4);
  for (long m = 0; m <= 3; ++m) {
    auto single = integrate(fs[static_cast<std::size_t>(m)], ctx, 6);
    CHECK(many[static_cast<std::size_t>(m)].converged);
    CHECK(many[static_cast<std::size_t>(m)].value == single.value);
  }
}

TEST_CASE("non-convergence is reported, never silent") {
  RationalDomain rd(3);
  auto Q = make_q_from_rational(rd, Rational(4));
  MeasureContext<RationalDomain> ctx(Q);
  auto f = Integrand<RationalDomain>::bracket_power(Q, 3);
  auto r = integrate(f, ctx, 8, /*N_max=*/2);
  CHECK_FALSE(r.converged);
  CHECK(r.achieved_precision < 8);
  CHECK(r.levels_used == 2);

  // A tiny term budget also ends the walk with an honest flag.
  auto rb = integrate(f, ctx, 6, -1, 0, /*max_terms=*/10);
  CHECK_FALSE(rb.converged);
}

TEST_CASE("translation identity q I(f(x+1)) + I(f) = (1+q) f(0)") {
  RationalDomain rd(3);
  auto Q = make_q_from_rational(rd, Rational(4));
  MeasureContext<RationalDomain> ctx(Q);

  // Constant integrand: the identity is exact at every level.
  auto rep1 = check_functional_equation(
      Integrand<RationalDomain>::constant_one(rd), ctx, 6);
  CHECK(rep1.converged);
  CHECK(rep1.residual == Rational(0));
  CHECK(rep1.residual_valuation == kValInfinity);

  for (long m = 1; m <= 4; ++m) {
    auto rep = check_functional_equation(
        Integrand<RationalDomain>::bracket_power(Q, m), ctx, 6);
    CHECK(rep.converged);
    CHECK(rep.residual_valuation >= 6);
  }

  PadicDomain pd(5, 12);
  auto Qp = make_q(pd, pd.from_integer(6));
  MeasureContext<PadicDomain> ctxp(Qp);
  auto repp = check_functional_equation(
      Integrand<PadicDomain>::bracket_power(Qp, 3), ctxp, 6);
  CHECK(repp.converged);
  CHECK(repp.residual_valuation >= 6);
}

TEST_CASE("q = 1 specialization: alternating limits hit classical values") {
  RationalDomain rd(3);
  auto one = Integrand<RationalDomain>::classical_monomial(rd, 0);
  auto r0 = q1_limit_integral(one, rd, 6);
  CHECK(r0.converged);
  CHECK(r0.value == Rational(1));

  auto x1 = Integrand<RationalDomain>::classical_monomial(rd, 1);
  auto r1 = q1_limit_integral(x1, rd, 6);
  CHECK(r1.converged);
  CHECK((r1.value - Rational(-1, 2)).valuation(3) >= 6);

  auto x2 = Integrand<RationalDomain>::classical_monomial(rd, 2);
  auto r2 = q1_limit_integral(x2, rd, 6);
  CHECK(r2.converged);
  CHECK(r2.value.valuation(3) >= 6);  // limit is 0
}

TEST_CASE("integrand metadata validates its inputs") {
  RationalDomain rd(3);
  auto Q = make_q_from_rational(rd, Rational(4));
  CHECK_THROWS_AS(Integrand<RationalDomain>::bracket_power(Q, -1),
                  DomainError);
  CHECK_THROWS_AS(Integrand<RationalDomain>(
                      "bad", 0, 2,
                      [](const mpz_class&, const Rational&) {
                        return Rational(0);
                      }),
                  DomainError);
  MeasureContext<RationalDomain> ctx(Q);
  auto f = Integrand<RationalDomain>::bracket_power(Q, 1);
  CHECK_THROWS_AS(riemann_sum(f, ctx, 1, /*d=*/6), DomainError);   // even
  CHECK_THROWS_AS(riemann_sum(f, ctx, 1, /*d=*/9), DomainError);   // p | d
}
