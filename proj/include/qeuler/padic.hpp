#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <string_view>

#include "qeuler/errors.hpp"
#include "qeuler/rational.hpp"

namespace qeuler {

/// Outcome of a comparison made at finite precision. kUnknown means the
/// stated precision cannot distinguish the operands; it is never silently
/// collapsed to true or false.
enum class TriBool { kFalse, kTrue, kUnknown };

std::ostream& operator<<(std::ostream& os, TriBool t);

/// p^e as an exact integer (e >= 0).
mpz_class pow_p(long p, long e);

/// Element of Q_p known to a fixed absolute precision: value = u * p^v +
/// O(p^M) with u a unit residue, 0 <= u < p^(M-v), or the distinguished
/// "zero at precision M" (nothing certified below p^M). Every operation
/// propagates M so that all surviving digits are certified:
///
///   add/sub:  M = min(Mx, My)
///   mul:      M = min(Mx + v(y), My + v(x))
///   div:      M = min(Mx, My) - v(divisor)
///
/// Units are exact residues (they come from exact rational embeddings), so
/// division by p^w*u costs exactly w digits of absolute precision.
class Padic {
 public:
  /// O(p^prec): the zero of the precision model.
  static Padic zero_at(long p, long prec);

  static Padic from_integer(const mpz_class& n, long p, long prec);

  /// num/den with den not divisible by... den may carry powers of p (the
  /// valuation goes negative); den == 0 throws DomainError.
  static Padic from_rational(const mpz_class& num, const mpz_class& den,
                             long p, long prec);
  static Padic from_rational(const Rational& r, long p, long prec);

  long prime() const { return p_; }
  long precision() const { return prec_; }

  /// True when nothing is certified below p^prec ("zero at precision").
  bool is_zero() const { return zero_; }

  /// Exact valuation; requires a value distinguishable from zero.
  long valuation() const;

  /// valuation() for nonzero values, precision() for zero-at-precision:
  /// the largest k with value = O(p^k) certified.
  long valuation_lower_bound() const { return zero_ ? prec_ : val_; }

  /// Unit part u (coprime to p, 0 <= u < p^(prec-valuation)); nonzero only.
  const mpz_class& unit() const;

  /// Canonical integer representative in [0, p^prec); requires valuation
  /// >= 0 (a p-adic integer).
  mpz_class residue() const;

  Padic operator-() const;
  friend Padic operator+(const Padic& a, const Padic& b);
  friend Padic operator-(const Padic& a, const Padic& b);
  friend Padic operator*(const Padic& a, const Padic& b);
  friend Padic operator/(const Padic& a, const Padic& b);

  /// Forget digits: reduce the absolute precision to new_prec <= precision().
  Padic truncated(long new_prec) const;

  /// Certified three-valued test of x == y (mod p^k). kUnknown when the
  /// operands' precision does not reach p^k.
  static TriBool agree_mod(const Padic& x, const Padic& y, long k);

  /// Structural equality of the representation (same prime, precision,
  /// valuation, unit). Used by tests for determinism, not as a value
  /// comparison.
  friend bool identical(const Padic& a, const Padic& b);

  /// Digit rendering, lowest power first:
  ///   "1 + 0*3 + 2*3^2 + O(3^3)"  (valuation >= 0: all digits below p^M)
  ///   "14*3^-2 + O(3^3)"          (negative valuation: unit * p^v)
  ///   "O(3^4)"                    (zero at precision)
  std::string str() const;

  /// Inverse of str(); the prime is recovered from the rendered base.
  static Padic parse(std::string_view text);

 private:
  Padic(long p, long prec, long val, mpz_class unit, bool zero)
      : p_(p), prec_(prec), val_(val), unit_(std::move(unit)), zero_(zero) {}

  /// Canonicalize u*p^val + O(p^prec) (u any exact integer).
  static Padic make(long p, long prec, long val, mpz_class u);

  static void require_same_prime(const Padic& a, const Padic& b);
  static void require_valid(long p, long prec);

  long p_;
  long prec_;
  long val_;        // 0 for zero-at-precision
  mpz_class unit_;  // 0 for zero-at-precision
  bool zero_;
};

/// p-adic exponential sum(x^k / k!); requires valuation(x) >= 1 (odd p).
/// The series is summed exactly over the rationals from the canonical
/// representative, truncated once the remaining terms are provably
/// O(p^(M+2)), then reduced at precision M.
Padic exp_p(const Padic& x);

/// p-adic logarithm sum(-(-1)^k (x-1)^k / k); requires v(x - 1) >= 1.
Padic log_p(const Padic& x);

/// Teichmueller representative: the (p-1)-st root of unity congruent to a
/// mod p, computed as the stabilizing limit of a^(p^n) mod p^prec.
/// Requires gcd(a, p) = 1.
Padic teichmuller(const mpz_class& a, long p, long prec);

/// q^x = exp_p(x * log_p(q)) for v(q - 1) >= 1 and v(x) >= 0. Agrees with
/// iterated multiplication when x is a nonnegative integer.
Padic q_pow(const Padic& q, const Padic& x);

}  // namespace qeuler
