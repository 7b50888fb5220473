#pragma once

#include <string>
#include <vector>

#include "qeuler/euler.hpp"
#include "qeuler/scalar.hpp"

namespace qeuler {

/// Exponential generating function sum_n c_n t^n / n!, truncated at degree
/// K; the coefficients are the q-deformed Euler numbers. c_0 = 1 always.
template <ScalarDomain D>
struct TruncatedEGF {
  QParam<D> q;
  std::vector<typename D::Scalar> coeffs;  // c_0 .. c_K

  long degree() const { return static_cast<long>(coeffs.size()) - 1; }
};

/// Coefficients from the alternating closed form (q != 1).
template <ScalarDomain D>
TruncatedEGF<D> build_egf(const QParam<D>& Q, long K,
                          long degree_cap = kDefaultDegreeCap) {
  TruncatedEGF<D> egf{Q, {}};
  egf.coeffs.reserve(static_cast<std::size_t>(K) + 1);
  for (long n = 0; n <= K; ++n)
    egf.coeffs.push_back(q_euler_closed(n, Q, degree_cap));
  return egf;
}

/// The q = 1 specialization: coefficients of 2/(e^t + 1), i.e. the
/// classical Euler numbers by their recurrence.
template <ScalarDomain D>
TruncatedEGF<D> build_egf_classical(const D& domain, long K) {
  TruncatedEGF<D> egf{make_q(domain, domain.from_integer(1)), {}};
  for (const Rational& e : classical_euler_table(K))
    egf.coeffs.push_back(domain.from_ratio(e.numerator(), e.denominator()));
  return egf;
}

/// Residuals of the q-difference equation satisfied by the coefficients:
///
///   r_n = q * sum_{k=0..n} C(n,k) q^k c_k + c_n - (1 + q) [n = 0],
///
/// identically zero degree by degree. (The constant term is the measure
/// norm 1 + q: the variant with constant 1 is inconsistent already at
/// degree 0, where c_0 = 1 forces q*c_0 + c_0 = 1 + q.)
template <ScalarDomain D>
std::vector<typename D::Scalar> q_difference_residuals(
    const TruncatedEGF<D>& egf) {
  const D& dom = egf.q.domain;
  const auto& c = egf.coeffs;
  std::vector<typename D::Scalar> out;
  out.reserve(c.size());
  for (long n = 0; n <= egf.degree(); ++n) {
    auto qk1 = egf.q.q;  // q^(k+1)
    auto sum = dom.from_integer(0);
    for (long k = 0; k <= n; ++k) {
      sum = sum + dom.from_integer(binomial(n, k)) * qk1 *
                      c[static_cast<std::size_t>(k)];
      if (k < n) qk1 = qk1 * egf.q.q;
    }
    auto r = sum + c[static_cast<std::size_t>(n)];
    if (n == 0) r = r - two_q(egf.q);
    out.push_back(r);
  }
  return out;
}

/// One-line clarification attached to q-difference check output: why the
/// constant term must be 1 + q.
inline std::string q_difference_note() {
  return "note: constant term taken as (1+q); the variant with constant 1 "
         "is inconsistent at degree 0 (c_0 = 1 forces q*c_0 + c_0 = 1+q)";
}

}  // namespace qeuler
