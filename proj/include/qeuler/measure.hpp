#pragma once

#include <gmpxx.h>

#include <string>

#include "qeuler/qnum.hpp"
#include "qeuler/scalar.hpp"

namespace qeuler {

/// Compact open subset a + d*p^N Z_p of the arithmetic fractal X_d =
/// lim_N Z/(d p^N): the residue class of a modulo d*p^N.
struct Ball {
  mpz_class a;
  long d = 1;
  long N = 0;
};

/// The signed ("fermionic") q-deformed distribution on balls:
///
///   mu(a + d p^N Z_p) = (-q)^a / [d p^N]_{-q}
///                     = (1 + q) (-1)^a q^a / (1 + q^(d p^N)).
///
/// Defined in the strict regime v_p(q - 1) >= 1, where 1 + q^n is a unit
/// for every odd n and the values are p-adic units (bounded measure).
template <ScalarDomain D>
class MeasureContext {
 public:
  using Scalar = typename D::Scalar;

  explicit MeasureContext(const QParam<D>& Q) : Q_(Q) {
    if (!Q.strict)
      throw DomainError(
          "fermionic q-measure requires the strict regime v_p(q - 1) >= 1");
  }

  const QParam<D>& qparam() const { return Q_; }

  /// d odd and coprime to p, N >= 0, 0 <= a < d*p^N.
  void validate(const Ball& b) const {
    if (b.d < 1 || b.d % 2 == 0)
      throw DomainError("ball modulus d must be odd and positive, got " +
                        std::to_string(b.d));
    if (b.d % Q_.domain.prime() == 0)
      throw DomainError("ball modulus d must be coprime to p, got d = " +
                        std::to_string(b.d));
    if (b.N < 0)
      throw DomainError("ball level N must be >= 0, got " +
                        std::to_string(b.N));
    mpz_class mod = b.d * pow_p(Q_.domain.prime(), b.N);
    if (b.a < 0 || b.a >= mod)
      throw DomainError("ball residue a = " + b.a.get_str() +
                        " outside [0, " + mod.get_str() + ")");
  }

  /// Canonical bracket form (-q)^a / [d p^N]_{-q}.
  Scalar mu(const Ball& b) const {
    validate(b);
    mpz_class mod = b.d * pow_p(Q_.domain.prime(), b.N);
    return neg_q_pow(Q_, b.a) / q_bracket_neg(mod, Q_);
  }

  /// Product form (1 + q) (-1)^a q^a / (1 + q^(d p^N)); equal to mu() as
  /// an identity, computed independently as a cross-check.
  Scalar mu_product_form(const Ball& b) const {
    validate(b);
    mpz_class mod = b.d * pow_p(Q_.domain.prime(), b.N);
    auto num = two_q(Q_) * pow_integer(Q_.domain, Q_.q, b.a);
    if (mpz_odd_p(b.a.get_mpz_t())) num = -num;
    auto den = Q_.domain.from_integer(1) +
               pow_integer(Q_.domain, Q_.q, mod);
    return num / den;
  }

  struct Additivity {
    bool holds;       // residual indistinguishable from zero
    Scalar residual;  // sum over children minus parent value
  };

  /// Distribution relation: the measures of the p children
  /// (a + j d p^N) + d p^(N+1) Z_p, j = 0..p-1, sum to the parent's.
  Additivity check_additivity(const Ball& parent) const {
    validate(parent);
    const long p = Q_.domain.prime();
    mpz_class step = parent.d * pow_p(p, parent.N);
    // (-q)^(a + j*step) walks by a fixed factor, so one power each for the
    // parent offset and the step suffice.
    Scalar factor = neg_q_pow(Q_, step);
    Scalar term = neg_q_pow(Q_, parent.a);
    Scalar sum = Q_.domain.from_integer(0);
    for (long j = 0; j < p; ++j) {
      sum = sum + term;
      term = term * factor;
    }
    Scalar children = sum / q_bracket_neg(step * p, Q_);
    Scalar residual = children - mu(parent);
    return Additivity{Q_.domain.is_zero(residual), residual};
  }

  /// Sum of mu over all residues modulo d*p^N, computed term by term; the
  /// telescoping value is exactly 1.
  Scalar total_mass(long d, long N) const {
    validate(Ball{0, d, N});
    mpz_class mod = d * pow_p(Q_.domain.prime(), N);
    Scalar term = Q_.domain.from_integer(1);
    Scalar minus_q = -Q_.q;
    Scalar sum = Q_.domain.from_integer(0);
    for (mpz_class a = 0; a < mod; ++a) {
      sum = sum + term;
      term = term * minus_q;
    }
    return sum / q_bracket_neg(mod, Q_);
  }

 private:
  QParam<D> Q_;
};

}  // namespace qeuler
