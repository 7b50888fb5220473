#pragma once

#include <gmpxx.h>

#include "qeuler/scalar.hpp"

namespace qeuler {

/// [2]_q = 1 + q, the normalizing constant of the fermionic measure.
template <ScalarDomain D>
typename D::Scalar two_q(const QParam<D>& Q) {
  return Q.domain.from_integer(1) + Q.q;
}

/// q-bracket [x]_q = (1 - q^x)/(1 - q) for an integer x, with the exact
/// limit value [x]_1 = x when q is indistinguishable from 1 (exactly 1 in
/// the rational backend, 1 + O(p^M) in the p-adic one; in the latter case
/// x is the value of the bracket to the working precision).
template <ScalarDomain D>
typename D::Scalar q_bracket(const mpz_class& x, const QParam<D>& Q) {
  const auto one = Q.domain.from_integer(1);
  if (Q.domain.is_zero(one - Q.q)) return Q.domain.from_integer(x);
  return (one - pow_integer(Q.domain, Q.q, x)) / (one - Q.q);
}

/// Signed bracket [x]_{-q} = (1 - (-q)^x)/(1 + q), x >= 0. Defined for all
/// q with 1 + q distinguishable from zero; in the strict regime 1 + q is a
/// unit, so no precision is spent. At q = 1 this is 0/1 for even x and 1
/// for odd x, which the formula already yields.
template <ScalarDomain D>
typename D::Scalar q_bracket_neg(const mpz_class& x, const QParam<D>& Q) {
  if (x < 0) throw DomainError("[x]_{-q} requires x >= 0");
  const auto one = Q.domain.from_integer(1);
  const auto den = one + Q.q;
  if (Q.domain.is_zero(den))
    throw DomainError("[x]_{-q} undefined: 1 + q is zero");
  auto qx = pow_integer(Q.domain, Q.q, x);
  if (mpz_odd_p(x.get_mpz_t())) qx = -qx;
  return (one - qx) / den;
}

/// (-q)^x for integer x >= 0.
template <ScalarDomain D>
typename D::Scalar neg_q_pow(const QParam<D>& Q, const mpz_class& x) {
  if (x < 0) throw DomainError("(-q)^x requires x >= 0 here");
  auto qx = pow_integer(Q.domain, Q.q, x);
  if (mpz_odd_p(x.get_mpz_t())) qx = -qx;
  return qx;
}

/// q-bracket with a p-adic exponent, via q^x = exp(x log q). Requires the
/// strict regime. When q is 1 at the working precision the bracket equals
/// x at that precision.
inline Padic q_bracket_scalar(const Padic& x, const QParam<PadicDomain>& Q) {
  const Padic one = Q.domain.from_integer(1);
  const Padic one_minus_q = one - Q.q;
  if (one_minus_q.is_zero())
    return x.truncated(std::min(x.precision(), one_minus_q.precision()));
  return (one - q_pow(Q.q, x)) / one_minus_q;
}

/// Exact-backend counterpart accepting a rational exponent only when it is
/// an integer; fractional powers of q do not exist among the rationals.
inline Rational q_bracket_scalar(const Rational& x,
                                 const QParam<RationalDomain>& Q) {
  if (!x.is_integer())
    throw DomainError(
        "non-integer bracket exponent is not representable in the exact "
        "backend");
  return q_bracket(x.numerator(), Q);
}

}  // namespace qeuler
