#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "qeuler/dirichlet.hpp"
#include "qeuler/integral.hpp"
#include "qeuler/qnum.hpp"
#include "qeuler/scalar.hpp"

namespace qeuler {

/// Exact binomial coefficient; 0 outside 0 <= k <= n.
inline mpz_class binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return r;
}

/// Default guard against accidentally huge closed-form expansions; callers
/// may raise it explicitly.
inline constexpr long kDefaultDegreeCap = 64;

namespace detail {

template <ScalarDomain D>
void check_degree(long m, long degree_cap) {
  if (m < 0) throw DomainError("degree must be >= 0");
  if (m > degree_cap)
    throw DomainError("degree " + std::to_string(m) +
                      " exceeds the cap " + std::to_string(degree_cap) +
                      "; pass a larger cap explicitly to allow it");
}

/// 1/(1-q)^m and the alternating reciprocal factors 1/(1 + q^(k+1)) are
/// the only divisions in the closed forms; both are checked and named when
/// singular.
template <ScalarDomain D>
typename D::Scalar inv_one_minus_q(const QParam<D>& Q) {
  const auto one = Q.domain.from_integer(1);
  const auto den = one - Q.q;
  if (Q.domain.is_zero(den))
    throw DomainError(
        "closed form singular: 1 - q is zero (q = 1 has no closed form; "
        "take the classical route instead)");
  return one / den;
}

}  // namespace detail

/// q-deformed Euler number by the alternating closed form
///
///   E_{m,q} = (1+q) (1/(1-q))^m sum_{k=0..m} C(m,k) (-1)^k / (1 + q^(k+1)).
///
/// Exact in the rational backend; in the p-adic backend each 1 + q^(k+1)
/// is a unit in the strict regime and the only precision cost is the
/// m * v_p(q-1) digits spent on (1-q)^(-m).
template <ScalarDomain D>
typename D::Scalar q_euler_closed(long m, const QParam<D>& Q,
                                  long degree_cap = kDefaultDegreeCap) {
  detail::check_degree<D>(m, degree_cap);
  const D& dom = Q.domain;
  const auto one = dom.from_integer(1);
  const auto inv = detail::inv_one_minus_q(Q);
  auto qk1 = Q.q;  // q^(k+1)
  auto sum = dom.from_integer(0);
  for (long k = 0; k <= m; ++k) {
    auto den = one + qk1;
    if (dom.is_zero(den))
      throw DomainError("closed form singular: 1 + q^" + std::to_string(k + 1) +
                        " is zero");
    auto term = dom.from_integer(binomial(m, k)) / den;
    sum = (k % 2 == 0) ? sum + term : sum - term;
    if (k < m) qk1 = qk1 * Q.q;
  }
  return two_q(Q) * pow_integer(dom, inv, mpz_class(m)) * sum;
}

/// The same number by its construction: the stabilized limit of signed
/// Riemann sums of [x]_q^m. Independent of the closed form.
template <ScalarDomain D>
IntegralResult<D> q_euler_integral(long m, const QParam<D>& Q, long M,
                                   long N_max = -1,
                                   long degree_cap = kDefaultDegreeCap) {
  detail::check_degree<D>(m, degree_cap);
  MeasureContext<D> mctx(Q);
  return integrate(Integrand<D>::bracket_power(Q, m), mctx, M, N_max);
}

enum class EulerMethod { kClosedForm, kIntegral };

/// Batch of E_{0..K,q} by one method. The integral method shares a single
/// summation walk across all degrees.
template <ScalarDomain D>
struct EulerTable {
  QParam<D> q;
  EulerMethod method;
  std::vector<typename D::Scalar> values;          // index m = 0..K
  std::vector<IntegralResult<D>> details;          // integral method only
};

template <ScalarDomain D>
EulerTable<D> build_euler_table(const QParam<D>& Q, long K, EulerMethod method,
                                long M = 0, long N_max = -1,
                                long degree_cap = kDefaultDegreeCap) {
  detail::check_degree<D>(K, degree_cap);
  EulerTable<D> table{Q, method, {}, {}};
  if (method == EulerMethod::kClosedForm) {
    for (long m = 0; m <= K; ++m)
      table.values.push_back(q_euler_closed(m, Q, degree_cap));
    return table;
  }
  if (M < 1)
    throw DomainError("integral method requires a requested precision >= 1");
  std::vector<Integrand<D>> fs;
  for (long m = 0; m <= K; ++m)
    fs.push_back(Integrand<D>::bracket_power(Q, m));
  MeasureContext<D> mctx(Q);
  table.details = integrate_many(fs, mctx, M, N_max);
  for (const auto& r : table.details) table.values.push_back(r.value);
  return table;
}

/// Classical Euler numbers (the q = 1 limit), exact, by the recurrence
/// read off the defining expansion 2/(e^t + 1):
/// sum_{k=0..n} C(n,k) E_k + E_n = 2 [n = 0].
std::vector<Rational> classical_euler_table(long K);
Rational classical_euler(long m);

/// q-Euler polynomial by the finite expansion
///   E_{n,q}(x) = sum_{l=0..n} C(n,l) q^(l x) E_{l,q} [x]_q^(n-l).
template <ScalarDomain D>
typename D::Scalar q_euler_poly(long n, const mpz_class& x,
                                const QParam<D>& Q,
                                long degree_cap = kDefaultDegreeCap) {
  detail::check_degree<D>(n, degree_cap);
  const D& dom = Q.domain;
  auto bracket_x = q_bracket(x, Q);
  auto qx = pow_integer(dom, Q.q, x);  // q^x
  auto qlx = dom.from_integer(1);      // q^(l x)
  auto sum = dom.from_integer(0);
  for (long l = 0; l <= n; ++l) {
    auto term = dom.from_integer(binomial(n, l)) * qlx *
                q_euler_closed(l, Q, degree_cap) *
                pow_integer(dom, bracket_x, mpz_class(n - l));
    sum = sum + term;
    if (l < n) qlx = qlx * qx;
  }
  return sum;
}

/// The same polynomial value by its construction: the stabilized limit of
/// signed Riemann sums of [x + t]_q^n in t.
template <ScalarDomain D>
IntegralResult<D> q_euler_poly_integral(long n, const mpz_class& x,
                                        const QParam<D>& Q, long M,
                                        long N_max = -1,
                                        long degree_cap = kDefaultDegreeCap) {
  detail::check_degree<D>(n, degree_cap);
  MeasureContext<D> mctx(Q);
  return integrate(Integrand<D>::shifted_bracket_power(Q, n, x), mctx, M,
                   N_max);
}

/// Character-twisted q-Euler number, closed form. Splitting the residues
/// x = i + d t of the level-N lattice and taking the stabilized limit of
/// the geometric tails turns the Riemann sums into
///
///   E_{m,chi,q} = (1+q) (1/(1-q))^m sum_{j=0..m} C(m,j) (-1)^j
///                 [ sum_{i<d} chi(i) (-1)^i q^(i(j+1)) ] / (1 + q^(d(j+1))).
template <ScalarDomain D>
typename D::Scalar generalized_q_euler_closed(
    long m, const Character& chi, const QParam<D>& Q,
    long degree_cap = kDefaultDegreeCap) {
  detail::check_degree<D>(m, degree_cap);
  const D& dom = Q.domain;
  const long d = chi.modulus();
  if (d % dom.prime() == 0)
    throw DomainError("character modulus must be coprime to p");
  const auto one = dom.from_integer(1);
  const auto inv = detail::inv_one_minus_q(Q);
  const auto chi_vals = chi.realize_table(dom);
  auto sum = dom.from_integer(0);
  for (long j = 0; j <= m; ++j) {
    // Inner alternating character sum at exponent step j + 1.
    auto qj1 = pow_integer(dom, Q.q, mpz_class(j + 1));  // q^(j+1)
    auto qpow = one;                                     // q^(i(j+1))
    auto inner = dom.from_integer(0);
    for (long i = 0; i < d; ++i) {
      auto t = chi_vals[static_cast<std::size_t>(i)] * qpow;
      inner = (i % 2 == 0) ? inner + t : inner - t;
      if (i + 1 < d) qpow = qpow * qj1;
    }
    auto den = one + pow_integer(dom, Q.q, mpz_class(d) * (j + 1));
    if (dom.is_zero(den))
      throw DomainError("closed form singular: 1 + q^" +
                        std::to_string(d * (j + 1)) + " is zero");
    auto term = dom.from_integer(binomial(m, j)) * inner / den;
    sum = (j % 2 == 0) ? sum + term : sum - term;
  }
  return two_q(Q) * pow_integer(dom, inv, mpz_class(m)) * sum;
}

/// Character-twisted q-Euler number by its construction: stabilized limit
/// of signed Riemann sums of chi(x) [x]_q^m over the modulus-d lattice.
template <ScalarDomain D>
IntegralResult<D> generalized_q_euler_integral(
    long m, const Character& chi, const QParam<D>& Q, long M,
    long N_max = -1, long degree_cap = kDefaultDegreeCap) {
  detail::check_degree<D>(m, degree_cap);
  const long d = chi.modulus();
  if (d % Q.domain.prime() == 0)
    throw DomainError("character modulus must be coprime to p");
  MeasureContext<D> mctx(Q);
  return integrate(Integrand<D>::char_twist(Q, chi, m), mctx, M, N_max, d);
}

}  // namespace qeuler
