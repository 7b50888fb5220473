#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

#include "qeuler/scalar.hpp"

namespace qeuler {

/// Dirichlet character of odd modulus d, stored as an explicit value table.
/// Unit values are roots of unity recorded symbolically as reduced
/// fractions k/n (the value is e^(2 pi i k/n)); realization into a scalar
/// backend happens on demand and fails loudly when the backend lacks the
/// required roots of unity.
class Character {
 public:
  struct Value {
    bool zero = false;
    long num = 0;  // exponent numerator k, 0 <= k < den, gcd(k, den) = 1
    long den = 1;  // order of the value

    static Value zero_value() { return Value{true, 0, 1}; }
    static Value one() { return Value{false, 0, 1}; }
    static Value minus_one() { return Value{false, 1, 2}; }
    static Value root(long n, long k);  // e^(2 pi i k/n), reduced on entry

    bool is_one() const { return !zero && num == 0; }
    friend bool operator==(const Value& a, const Value& b) {
      return a.zero == b.zero && a.num == b.num && a.den == b.den;
    }
  };

  /// Build from a complete table chi(0), ..., chi(d-1); validates the
  /// zero pattern (chi(i) = 0 iff gcd(i, d) > 1), chi(1) = 1, periodic
  /// multiplicativity, and that every unit value is a root of unity.
  static Character from_values(long d, std::vector<Value> table);

  static Character trivial(long d = 1);

  /// Grammar: "d:t0,t1,...,t(d-1)" with tokens 0, 1, -1 or zeta(n,k).
  static Character parse(std::string_view text);

  long modulus() const { return d_; }

  /// Order of the character in the dual group (lcm of value orders).
  long order() const { return order_; }

  /// Smallest modulus e | d through which the character factors.
  long conductor() const { return conductor_; }

  bool is_primitive() const { return conductor_ == d_; }
  bool is_trivial() const { return order_ == 1; }

  const Value& value(const mpz_class& i) const;

  /// Realize chi(i) as an exact rational: only orders 1 and 2 exist there.
  Rational realize(const RationalDomain& dom, const mpz_class& i) const;

  /// Realize chi(i) in Z_p via the Teichmueller lift: a primitive n-th
  /// root of unity exists iff n | p - 1, namely omega(g)^((p-1)/n) for a
  /// generator g of the units mod p.
  Padic realize(const PadicDomain& dom, const mpz_class& i) const;

  /// All d values realized at once (roots of unity computed once).
  template <ScalarDomain D>
  std::vector<typename D::Scalar> realize_table(const D& dom) const {
    std::vector<typename D::Scalar> out;
    out.reserve(static_cast<std::size_t>(d_));
    for (long i = 0; i < d_; ++i) out.push_back(realize(dom, i));
    return out;
  }

  /// Inverse of parse().
  std::string str() const;

 private:
  Character(long d, long order, long conductor, std::vector<Value> vals)
      : d_(d), order_(order), conductor_(conductor), vals_(std::move(vals)) {}

  long d_;
  long order_;
  long conductor_;
  std::vector<Value> vals_;
};

/// Smallest generator of the cyclic group (Z/p)^*.
long least_primitive_root(long p);

}  // namespace qeuler
