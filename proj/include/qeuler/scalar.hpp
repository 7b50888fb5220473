#pragma once

#include <gmpxx.h>

#include <concepts>
#include <string>

#include "qeuler/errors.hpp"
#include "qeuler/padic.hpp"
#include "qeuler/rational.hpp"

namespace qeuler {

/// A scalar backend: exact rationals viewed p-adically, or Q_p at a fixed
/// working precision. Generic code (brackets, measures, sums) is written
/// once against this interface; "certified" queries answer conservatively
/// in the inexact backend and exactly in the exact one.
template <typename D>
concept ScalarDomain = requires(const D d, const typename D::Scalar s,
                                const mpz_class n, long k) {
  typename D::Scalar;
  { d.prime() } -> std::convertible_to<long>;
  { d.from_integer(n) } -> std::same_as<typename D::Scalar>;
  { d.from_ratio(n, n) } -> std::same_as<typename D::Scalar>;
  { d.is_zero(s) } -> std::same_as<bool>;
  { d.valuation_lower_bound(s) } -> std::same_as<long>;
  { d.agree_mod(s, s, k) } -> std::same_as<TriBool>;
  { d.render(s) } -> std::same_as<std::string>;
  { D::exact() } -> std::same_as<bool>;
};

/// Exact rationals, carrying an ambient odd prime for valuation queries.
class RationalDomain {
 public:
  using Scalar = Rational;

  explicit RationalDomain(long p) : p_(p) {
    if (!is_odd_prime(p))
      throw DomainError("p must be an odd prime, got " + std::to_string(p));
  }

  long prime() const { return p_; }

  Scalar from_integer(const mpz_class& n) const { return Rational(n); }
  Scalar from_ratio(const mpz_class& num, const mpz_class& den) const {
    return Rational(num, den);
  }

  /// Exact zero test.
  bool is_zero(const Scalar& x) const { return x.is_zero(); }

  /// Exact valuation (kValInfinity for zero), so the bound is tight.
  long valuation_lower_bound(const Scalar& x) const {
    return x.valuation(p_);
  }

  TriBool agree_mod(const Scalar& x, const Scalar& y, long k) const {
    return valuation_lower_bound(x - y) >= k ? TriBool::kTrue
                                             : TriBool::kFalse;
  }

  std::string render(const Scalar& x) const { return x.str(); }

  static constexpr bool exact() { return true; }

 private:
  long p_;
};

/// Q_p at a fixed working absolute precision.
class PadicDomain {
 public:
  using Scalar = Padic;

  PadicDomain(long p, long prec) : p_(p), prec_(prec) {
    Padic::zero_at(p, prec);  // validates p and prec
  }

  long prime() const { return p_; }
  long precision() const { return prec_; }

  Scalar from_integer(const mpz_class& n) const {
    return Padic::from_integer(n, p_, prec_);
  }
  Scalar from_ratio(const mpz_class& num, const mpz_class& den) const {
    return Padic::from_rational(num, den, p_, prec_);
  }

  /// Zero at the value's stated precision (indistinguishable from zero).
  bool is_zero(const Scalar& x) const { return x.is_zero(); }

  long valuation_lower_bound(const Scalar& x) const {
    return x.valuation_lower_bound();
  }

  TriBool agree_mod(const Scalar& x, const Scalar& y, long k) const {
    return Padic::agree_mod(x, y, k);
  }

  std::string render(const Scalar& x) const { return x.str(); }

  static constexpr bool exact() { return false; }

 private:
  long p_;
  long prec_;
};

static_assert(ScalarDomain<RationalDomain>);
static_assert(ScalarDomain<PadicDomain>);

/// Deformation parameter q together with its backend. The "strict" flag
/// records v_p(q - 1) >= 1, the regime in which the signed measure below is
/// bounded and all limit constructions converge.
template <ScalarDomain D>
struct QParam {
  D domain;
  typename D::Scalar q;
  bool strict;
};

template <ScalarDomain D>
QParam<D> make_q(const D& domain, const typename D::Scalar& q) {
  long v = domain.valuation_lower_bound(q - domain.from_integer(1));
  return QParam<D>{domain, q, v >= 1};
}

/// Convenience: embed an exact rational q into the chosen backend.
template <ScalarDomain D>
QParam<D> make_q_from_rational(const D& domain, const Rational& q) {
  return make_q(domain, domain.from_ratio(q.numerator(), q.denominator()));
}

/// base^e by binary exponentiation; e < 0 divides (and may throw the
/// backend's division error if base is zero). Integer powers never go
/// through exp/log, so they are exact in both backends.
template <ScalarDomain D>
typename D::Scalar pow_integer(const D& domain, typename D::Scalar base,
                               mpz_class e) {
  bool invert = false;
  if (e < 0) {
    invert = true;
    e = -e;
  }
  typename D::Scalar acc = domain.from_integer(1);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) acc = acc * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  if (invert) return domain.from_integer(1) / acc;
  return acc;
}

}  // namespace qeuler
