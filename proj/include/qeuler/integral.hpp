#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qeuler/dirichlet.hpp"
#include "qeuler/measure.hpp"
#include "qeuler/qnum.hpp"
#include "qeuler/scalar.hpp"

namespace qeuler {

/// Function on the arithmetic fractal, evaluated along the summation walk.
/// The driver supplies q^x together with x (it maintains the power
/// incrementally), so evaluators never re-exponentiate per term.
template <ScalarDomain D>
class Integrand {
 public:
  using Scalar = typename D::Scalar;
  using Eval = std::function<Scalar(const mpz_class&, const Scalar&)>;

  Integrand(std::string description, long degree, long modulus, Eval eval)
      : description_(std::move(description)),
        degree_(degree),
        modulus_(modulus),
        eval_(std::move(eval)) {
    if (degree_ < 0) throw DomainError("integrand degree must be >= 0");
    if (modulus_ < 1 || modulus_ % 2 == 0)
      throw DomainError("integrand modulus must be odd and positive");
  }

  Scalar operator()(const mpz_class& x, const Scalar& q_to_x) const {
    return eval_(x, q_to_x);
  }

  const std::string& description() const { return description_; }

  /// Polynomial degree in the bracket variable; drives the level guard.
  long degree() const { return degree_; }

  /// Natural modulus d of the summation lattice (1 unless twisted).
  long modulus() const { return modulus_; }

  /// f1(x) = f(x + 1); the shifted power q^(x+1) is derived from the
  /// supplied q^x by one multiplication.
  Integrand translated(const QParam<D>& Q) const {
    Eval inner = eval_;
    Scalar q = Q.q;
    return Integrand("translate(" + description_ + ")", degree_, modulus_,
                     [inner, q](const mpz_class& x, const Scalar& qx) {
                       return inner(x + 1, q * qx);
                     });
  }

  /// f(x) = 1.
  static Integrand constant_one(const D& domain) {
    auto one = domain.from_integer(1);
    return Integrand("1", 0, 1,
                     [one](const mpz_class&, const Scalar&) { return one; });
  }

  /// f(x) = [x]_q^m, with the exact limit x^m when q is indistinguishable
  /// from 1. The inverse of (1 - q) is taken once, outside the walk.
  static Integrand bracket_power(const QParam<D>& Q, long m) {
    if (m < 0) throw DomainError("bracket power must be >= 0");
    const auto one = Q.domain.from_integer(1);
    const auto one_minus_q = one - Q.q;
    const D dom = Q.domain;
    std::string desc = "bracket^" + std::to_string(m);
    if (Q.domain.is_zero(one_minus_q)) {
      return Integrand(std::move(desc), m, 1,
                       [dom, m](const mpz_class& x, const Scalar&) {
                         mpz_class xp;
                         mpz_pow_ui(xp.get_mpz_t(), x.get_mpz_t(),
                                    static_cast<unsigned long>(m));
                         return dom.from_integer(xp);
                       });
    }
    const auto inv = one / one_minus_q;
    return Integrand(std::move(desc), m, 1,
                     [dom, one, inv, m](const mpz_class&, const Scalar& qx) {
                       return pow_integer(dom, (one - qx) * inv,
                                          mpz_class(m));
                     });
  }

  /// f(x) = [x + s]_q^n for a fixed integer shift s.
  static Integrand shifted_bracket_power(const QParam<D>& Q, long n,
                                         const mpz_class& s) {
    if (n < 0) throw DomainError("bracket power must be >= 0");
    const auto one = Q.domain.from_integer(1);
    const auto one_minus_q = one - Q.q;
    const D dom = Q.domain;
    std::string desc = "bracket_shift(" + s.get_str() + ")^" +
                       std::to_string(n);
    if (Q.domain.is_zero(one_minus_q)) {
      return Integrand(std::move(desc), n, 1,
                       [dom, n, s](const mpz_class& x, const Scalar&) {
                         mpz_class xp;
                         mpz_class base = x + s;
                         mpz_pow_ui(xp.get_mpz_t(), base.get_mpz_t(),
                                    static_cast<unsigned long>(n));
                         return dom.from_integer(xp);
                       });
    }
    const auto inv = one / one_minus_q;
    const auto qs = pow_integer(Q.domain, Q.q, s);
    return Integrand(std::move(desc), n, 1,
                     [dom, one, inv, qs, n](const mpz_class&,
                                            const Scalar& qx) {
                       return pow_integer(dom, (one - qs * qx) * inv,
                                          mpz_class(n));
                     });
  }

  /// f(x) = chi(x) [x]_q^m; the character's values are realized in the
  /// backend once, and the natural modulus becomes chi's modulus.
  static Integrand char_twist(const QParam<D>& Q, const Character& chi,
                              long m) {
    Integrand base = bracket_power(Q, m);
    auto table = chi.realize_table(Q.domain);
    long d = chi.modulus();
    std::string desc = "chi(" + chi.str() + ")*bracket^" + std::to_string(m);
    Eval inner = base.eval_;
    return Integrand(std::move(desc), m, d,
                     [inner, table, d](const mpz_class& x, const Scalar& qx) {
                       long r = static_cast<long>(mpz_fdiv_ui(
                           x.get_mpz_t(), static_cast<unsigned long>(d)));
                       return table[static_cast<std::size_t>(r)] *
                              inner(x, qx);
                     });
  }

  /// f(x) = x^n, independent of q; the classical limit integrand.
  static Integrand classical_monomial(const D& domain, long n) {
    if (n < 0) throw DomainError("monomial degree must be >= 0");
    return Integrand("x^" + std::to_string(n), n, 1,
                     [domain, n](const mpz_class& x, const Scalar&) {
                       mpz_class xp;
                       mpz_pow_ui(xp.get_mpz_t(), x.get_mpz_t(),
                                  static_cast<unsigned long>(n));
                       return domain.from_integer(xp);
                     });
  }

 private:
  std::string description_;
  long degree_;
  long modulus_;
  Eval eval_;
};

/// Outcome of a stabilized limit of signed Riemann sums.
template <ScalarDomain D>
struct IntegralResult {
  typename D::Scalar value;
  bool converged;
  long levels_used;         // level of the returned sum
  long achieved_precision;  // certified stable digits, <= requested
  std::vector<typename D::Scalar> level_values;  // S_0, S_1, ..., in order
};

/// Signed Riemann sum at level N over the lattice of modulus d*p^N:
///
///   S_N(f) = (1 / [d p^N]_{-q}) * sum_{x < d p^N} f(x) (-q)^x.
///
/// Strict regime only (enforced by the measure context); N >= 1.
template <ScalarDomain D>
typename D::Scalar riemann_sum(const Integrand<D>& f,
                               const MeasureContext<D>& mctx, long N,
                               long d = 0) {
  if (N < 1)
    throw DomainError("riemann_sum level must be >= 1, got " +
                      std::to_string(N));
  const QParam<D>& Q = mctx.qparam();
  const D& dom = Q.domain;
  if (d == 0) d = f.modulus();
  if (d < 1 || d % 2 == 0 || d % dom.prime() == 0)
    throw DomainError("summation modulus must be odd, positive and coprime "
                      "to p");
  mpz_class count = d * pow_p(dom.prime(), N);
  typename D::Scalar qx = dom.from_integer(1);
  typename D::Scalar weight = qx;  // (-q)^x, maintained incrementally
  typename D::Scalar minus_q = -Q.q;
  typename D::Scalar raw = dom.from_integer(0);
  for (mpz_class x = 0; x < count; ++x) {
    raw = raw + f(x, qx) * weight;
    qx = qx * Q.q;
    weight = weight * minus_q;
  }
  return raw / q_bracket_neg(count, Q);
}

namespace detail {

/// Truncate a converged p-adic value to its certified digits; exact
/// rationals pass through unchanged.
inline Rational clip_to_achieved(const Rational& v, long) { return v; }
inline Padic clip_to_achieved(const Padic& v, long achieved) {
  return v.truncated(std::min(achieved, v.precision()));
}

}  // namespace detail

/// Shared-walk stabilized limits for a family of integrands: one pass over
/// x = 0, 1, 2, ... computes every S_n as its lattice boundary d*p^n is
/// crossed. An integrand is converged once two consecutive levels agree
/// modulo p^M; the walk ends when every integrand has converged, the level
/// guard N_max is exhausted, or the term budget runs out (the last two
/// yield converged = false, never a silent answer).
template <ScalarDomain D>
std::vector<IntegralResult<D>> integrate_many(
    const std::vector<Integrand<D>>& fs, const MeasureContext<D>& mctx,
    long M, long N_max = -1, long d_override = 0,
    long max_terms = 20'000'000) {
  using Scalar = typename D::Scalar;
  if (fs.empty()) return {};
  if (M < 1) throw DomainError("requested precision must be >= 1");
  const QParam<D>& Q = mctx.qparam();
  const D& dom = Q.domain;
  const long p = dom.prime();

  long d = d_override;
  long max_degree = 0;
  for (const auto& f : fs) {
    max_degree = std::max(max_degree, f.degree());
    if (d_override == 0) d = std::max(d, f.modulus());
  }
  for (const auto& f : fs)
    if (d % f.modulus() != 0)
      throw DomainError("integrand modulus " + std::to_string(f.modulus()) +
                        " does not divide the summation modulus " +
                        std::to_string(d));
  if (d < 1 || d % 2 == 0 || d % p == 0)
    throw DomainError("summation modulus must be odd, positive and coprime "
                      "to p");
  if (N_max < 0) N_max = M + max_degree + 2;
  if (N_max < 1) throw DomainError("N_max must be >= 1");

  const std::size_t n_fs = fs.size();
  std::vector<IntegralResult<D>> out(
      n_fs, IntegralResult<D>{dom.from_integer(0), false, 0, 0, {}});
  std::vector<Scalar> raw(n_fs, dom.from_integer(0));
  std::vector<bool> done(n_fs, false);
  std::size_t remaining = n_fs;

  Scalar qx = dom.from_integer(1);
  Scalar weight = qx;  // (-q)^x
  const Scalar q = Q.q;
  const Scalar minus_q = -q;

  long level = 0;
  mpz_class boundary = d;  // d * p^level
  mpz_class x = 0;
  long terms = 0;
  bool budget_exhausted = false;

  while (level <= N_max && remaining > 0) {
    while (x < boundary) {
      for (std::size_t i = 0; i < n_fs; ++i)
        if (!done[i]) raw[i] = raw[i] + fs[i](x, qx) * weight;
      qx = qx * q;
      weight = weight * minus_q;
      ++x;
      if (++terms >= max_terms && x < boundary) {
        budget_exhausted = true;
        break;
      }
    }
    if (budget_exhausted) break;
    Scalar bracket = q_bracket_neg(boundary, Q);
    for (std::size_t i = 0; i < n_fs; ++i) {
      if (done[i]) continue;
      Scalar S = raw[i] / bracket;
      out[i].level_values.push_back(S);
      out[i].levels_used = level;
      if (level >= 1) {
        const Scalar& prev =
            out[i].level_values[static_cast<std::size_t>(level) - 1];
        if (dom.agree_mod(S, prev, M) == TriBool::kTrue) {
          long vlb = dom.valuation_lower_bound(S - prev);
          out[i].achieved_precision = std::min(vlb, M);
          out[i].value = detail::clip_to_achieved(S, out[i].achieved_precision);
          out[i].converged = true;
          done[i] = true;
          --remaining;
          continue;
        }
      }
      out[i].value = S;
    }
    ++level;
    boundary *= p;
  }

  // Whatever did not converge reports its best certified agreement.
  for (std::size_t i = 0; i < n_fs; ++i) {
    if (done[i]) continue;
    const auto& lv = out[i].level_values;
    if (lv.size() >= 2) {
      long vlb = dom.valuation_lower_bound(lv[lv.size() - 1] -
                                           lv[lv.size() - 2]);
      out[i].achieved_precision = std::clamp(vlb, 0L, M);
    }
  }
  return out;
}

/// Stabilized limit of one integrand; see integrate_many.
template <ScalarDomain D>
IntegralResult<D> integrate(const Integrand<D>& f,
                            const MeasureContext<D>& mctx, long M,
                            long N_max = -1, long d_override = 0,
                            long max_terms = 20'000'000) {
  return integrate_many(std::vector<Integrand<D>>{f}, mctx, M, N_max,
                        d_override, max_terms)[0];
}

/// Residual report for the translation identity
/// q * I(f(x+1)) + I(f) = (1 + q) f(0).
template <ScalarDomain D>
struct FeqReport {
  typename D::Scalar residual;
  long residual_valuation;  // certified lower bound; kValInfinity if exact 0
  bool converged;
  IntegralResult<D> integral_translated;
  IntegralResult<D> integral_plain;
};

template <ScalarDomain D>
FeqReport<D> check_functional_equation(const Integrand<D>& f,
                                       const MeasureContext<D>& mctx, long M,
                                       long N_max = -1) {
  const QParam<D>& Q = mctx.qparam();
  const D& dom = Q.domain;
  auto results = integrate_many(
      std::vector<Integrand<D>>{f, f.translated(Q)}, mctx, M, N_max);
  const auto& plain = results[0];
  const auto& shifted = results[1];
  auto f0 = f(0, dom.from_integer(1));
  auto residual = Q.q * shifted.value + plain.value - two_q(Q) * f0;
  return FeqReport<D>{residual, dom.valuation_lower_bound(residual),
                      plain.converged && shifted.converged, shifted, plain};
}

/// The q = 1 limit: the measure degenerates to the signed counting measure
/// (-1)^x, and the stabilized limit recovers the alternating-sum value.
template <ScalarDomain D>
IntegralResult<D> q1_limit_integral(const Integrand<D>& f, const D& domain,
                                    long M, long N_max = -1) {
  auto Q = make_q(domain, domain.from_integer(1));
  MeasureContext<D> mctx(Q);
  return integrate(f, mctx, M, N_max);
}

}  // namespace qeuler
