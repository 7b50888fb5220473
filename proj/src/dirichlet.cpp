#include "qeuler/dirichlet.hpp"

#include <cctype>
#include <numeric>

namespace qeuler {

namespace {

/// Product of two root-of-unity values: exponents add in Q/Z.
Character::Value value_mul(const Character::Value& a,
                           const Character::Value& b) {
  if (a.zero || b.zero) return Character::Value::zero_value();
  long den = std::lcm(a.den, b.den);
  long num = (a.num * (den / a.den) + b.num * (den / b.den)) % den;
  return Character::Value::root(den, num);
}

std::vector<long> prime_factors(long n) {
  std::vector<long> out;
  for (long q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

Character::Value Character::Value::root(long n, long k) {
  if (n < 1) throw DomainError("root-of-unity order must be >= 1");
  k %= n;
  if (k < 0) k += n;
  long g = std::gcd(k, n);
  return Value{false, k / g, n / g};
}

Character Character::from_values(long d, std::vector<Value> table) {
  if (d < 1 || d % 2 == 0)
    throw DomainError("character modulus must be odd and positive, got " +
                      std::to_string(d));
  if (static_cast<long>(table.size()) != d)
    throw ValidationError("character table has " +
                          std::to_string(table.size()) + " entries, need " +
                          std::to_string(d));
  // Normalize roots and check the zero pattern.
  for (long i = 0; i < d; ++i) {
    Value& v = table[static_cast<std::size_t>(i)];
    if (!v.zero) v = Value::root(v.den, v.num);
    bool unit = std::gcd(i, d) == 1;
    if (unit && v.zero)
      throw ValidationError("chi(" + std::to_string(i) +
                            ") = 0 but gcd(i, d) = 1");
    if (!unit && !v.zero)
      throw ValidationError("chi(" + std::to_string(i) +
                            ") != 0 but gcd(i, d) > 1");
  }
  if (!table[d == 1 ? 0 : 1].is_one())
    throw ValidationError("chi(1) must equal 1");
  // Multiplicativity over the stored period.
  for (long a = 0; a < d; ++a) {
    if (std::gcd(a, d) != 1) continue;
    for (long b = a; b < d; ++b) {
      if (std::gcd(b, d) != 1) continue;
      Value lhs = value_mul(table[static_cast<std::size_t>(a)],
                            table[static_cast<std::size_t>(b)]);
      const Value& rhs = table[static_cast<std::size_t>((a * b) % d)];
      if (!(lhs == rhs))
        throw ValidationError("chi(" + std::to_string(a) + ")*chi(" +
                              std::to_string(b) + ") != chi(" +
                              std::to_string((a * b) % d) + " mod " +
                              std::to_string(d) + ")");
    }
  }
  long order = 1;
  for (const Value& v : table)
    if (!v.zero) order = std::lcm(order, v.den);
  // Conductor: the smallest e | d with chi trivial on units congruent to
  // 1 mod e.
  long conductor = d;
  for (long e = 1; e <= d; ++e) {
    if (d % e != 0) continue;
    bool factors = true;
    for (long a = 0; a < d && factors; ++a)
      if (std::gcd(a, d) == 1 && a % e == 1 % e &&
          !table[static_cast<std::size_t>(a)].is_one())
        factors = false;
    if (factors) {
      conductor = e;
      break;
    }
  }
  return Character(d, order, conductor, std::move(table));
}

Character Character::trivial(long d) {
  std::vector<Value> table;
  table.reserve(static_cast<std::size_t>(d));
  for (long i = 0; i < d; ++i)
    table.push_back(std::gcd(i, d) == 1 ? Value::one() : Value::zero_value());
  return from_values(d, std::move(table));
}

const Character::Value& Character::value(const mpz_class& i) const {
  unsigned long r = mpz_fdiv_ui(i.get_mpz_t(), static_cast<unsigned long>(d_));
  return vals_[static_cast<std::size_t>(r)];
}

Rational Character::realize(const RationalDomain&, const mpz_class& i) const {
  const Value& v = value(i);
  if (v.zero) return Rational(0);
  if (v.den == 1) return Rational(1);
  if (v.den == 2) return Rational(-1);
  throw UnsupportedValueError(
      "character value of order " + std::to_string(v.den) +
      " has no exact rational realization (only orders 1 and 2 do)");
}

Padic Character::realize(const PadicDomain& dom, const mpz_class& i) const {
  const Value& v = value(i);
  if (v.zero) return dom.from_integer(0);
  long p = dom.prime();
  if ((p - 1) % v.den != 0)
    throw UnsupportedValueError(
        "no primitive root of unity of order " + std::to_string(v.den) +
        " in Z_" + std::to_string(p) + " (order must divide p - 1 = " +
        std::to_string(p - 1) + ")");
  Padic omega = teichmuller(least_primitive_root(p), p, dom.precision());
  mpz_class e = mpz_class((p - 1) / v.den) * v.num;
  return pow_integer(dom, omega, e);
}

std::string Character::str() const {
  std::string out = std::to_string(d_) + ":";
  for (long i = 0; i < d_; ++i) {
    const Value& v = vals_[static_cast<std::size_t>(i)];
    if (i) out += ",";
    if (v.zero)
      out += "0";
    else if (v.den == 1)
      out += "1";
    else if (v.den == 2)
      out += "-1";
    else
      out += "zeta(" + std::to_string(v.den) + "," + std::to_string(v.num) +
             ")";
  }
  return out;
}

Character Character::parse(std::string_view text) {
  std::size_t i = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw ParseError("invalid character '" + std::string(text) + "': " + msg,
                     i);
  };
  auto read_long = [&]() -> long {
    std::size_t start = i;
    if (i < text.size() && text[i] == '-') ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
      ++i;
    if (i == start || (text[start] == '-' && i == start + 1))
      fail("expected an integer");
    return std::stol(std::string(text.substr(start, i - start)));
  };
  long d = read_long();
  if (i >= text.size() || text[i] != ':') fail("expected ':'");
  ++i;
  std::vector<Value> table;
  for (;;) {
    if (text.substr(i, 5) == "zeta(") {
      i += 5;
      long n = read_long();
      if (i >= text.size() || text[i] != ',') fail("expected ','");
      ++i;
      long k = read_long();
      if (i >= text.size() || text[i] != ')') fail("expected ')'");
      ++i;
      table.push_back(Value::root(n, k));
    } else {
      long v = read_long();
      if (v == 0)
        table.push_back(Value::zero_value());
      else if (v == 1)
        table.push_back(Value::one());
      else if (v == -1)
        table.push_back(Value::minus_one());
      else
        fail("plain values must be 0, 1 or -1");
    }
    if (i == text.size()) break;
    if (text[i] != ',') fail("expected ',' or end");
    ++i;
  }
  return from_values(d, std::move(table));
}

long least_primitive_root(long p) {
  if (!is_odd_prime(p))
    throw DomainError("primitive root requested for non-prime " +
                      std::to_string(p));
  std::vector<long> qs = prime_factors(p - 1);
  mpz_class mod(p);
  for (long g = 2; g < p; ++g) {
    bool generates = true;
    for (long q : qs) {
      mpz_class r;
      mpz_class base(g), e((p - 1) / q);
      mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(),
               mod.get_mpz_t());
      if (r == 1) {
        generates = false;
        break;
      }
    }
    if (generates) return g;
  }
  throw Error("internal: no primitive root found");
}

}  // namespace qeuler
