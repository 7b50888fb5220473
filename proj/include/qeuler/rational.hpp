#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "qeuler/errors.hpp"

namespace qeuler {

/// Sentinel returned by valuation queries on an exact zero: the valuation is
/// +infinity, represented as a value larger than any precision in use.
inline constexpr long kValInfinity = 1L << 40;

/// Exact rational number. Thin wrapper around GMP's mpq_class that pins the
/// error idiom (throw on zero division) and the rendering used everywhere in
/// this project ("num/den", "num" when the denominator is 1).
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT: implicit by design, mirrors integers
  explicit Rational(const mpz_class& n) : v_(n) {}
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  /// num/den with den != 0; the stored value is always canonicalized.
  Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }

  const mpq_class& raw() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  bool is_zero() const { return v_ == 0; }
  bool is_integer() const { return v_.get_den() == 1; }

  Rational operator-() const { return Rational(mpq_class(-v_)); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw DomainError("rational division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.v_ == b.v_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }

  /// Exact p-adic valuation v_p(num) - v_p(den); kValInfinity for zero.
  long valuation(long p) const;

  /// "num/den", or "num" when the denominator is 1.
  std::string str() const;

  /// Inverse of str(); accepts optional leading '-', "a" and "a/b".
  static Rational parse(std::string_view text);

 private:
  mpq_class v_;
};

/// Exact p-adic valuation of an integer; kValInfinity for zero.
long int_valuation(const mpz_class& n, long p);

/// Trial-division primality check adequate for the word-sized odd primes
/// this library works over.
bool is_odd_prime(long p);

}  // namespace qeuler
