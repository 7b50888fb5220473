#include "qeuler/padic.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <vector>

namespace qeuler {

std::ostream& operator<<(std::ostream& os, TriBool t) {
  switch (t) {
    case TriBool::kFalse: return os << "false";
    case TriBool::kTrue: return os << "true";
    case TriBool::kUnknown: return os << "unknown";
  }
  return os;
}

mpz_class pow_p(long p, long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p),
                static_cast<unsigned long>(e));
  return r;
}

void Padic::require_valid(long p, long prec) {
  if (!is_odd_prime(p))
    throw DomainError("p must be an odd prime, got " + std::to_string(p));
  if (prec < 1)
    throw PrecisionError("absolute precision must be >= 1, got " +
                         std::to_string(prec));
}

void Padic::require_same_prime(const Padic& a, const Padic& b) {
  if (a.p_ != b.p_)
    throw DomainError("mixed primes " + std::to_string(a.p_) + " and " +
                      std::to_string(b.p_));
}

Padic Padic::zero_at(long p, long prec) {
  require_valid(p, prec);
  return Padic(p, prec, 0, 0, true);
}

Padic Padic::make(long p, long prec, long val, mpz_class u) {
  require_valid(p, prec);
  long rel = prec - val;
  if (rel <= 0) return zero_at(p, prec);
  mpz_class mod = pow_p(p, rel);
  mpz_fdiv_r(u.get_mpz_t(), u.get_mpz_t(), mod.get_mpz_t());
  if (u == 0) return zero_at(p, prec);
  // u != 0 mod p^rel, so the representative's p-valuation w < rel is the
  // exact valuation of the value.
  mpz_class unit;
  unsigned long w = mpz_remove(unit.get_mpz_t(), u.get_mpz_t(),
                               mpz_class(p).get_mpz_t());
  return Padic(p, prec, val + static_cast<long>(w), std::move(unit), false);
}

Padic Padic::from_integer(const mpz_class& n, long p, long prec) {
  return make(p, prec, 0, n);
}

Padic Padic::from_rational(const mpz_class& num, const mpz_class& den, long p,
                           long prec) {
  require_valid(p, prec);
  if (den == 0) throw DomainError("p-adic embedding with zero denominator");
  if (num == 0) return zero_at(p, prec);
  mpz_class nu, du;
  long vnum = static_cast<long>(
      mpz_remove(nu.get_mpz_t(), num.get_mpz_t(), mpz_class(p).get_mpz_t()));
  long vden = static_cast<long>(
      mpz_remove(du.get_mpz_t(), den.get_mpz_t(), mpz_class(p).get_mpz_t()));
  long val = vnum - vden;
  long rel = prec - val;
  if (rel <= 0) return zero_at(p, prec);
  mpz_class mod = pow_p(p, rel);
  mpz_class inv;
  if (mpz_invert(inv.get_mpz_t(), du.get_mpz_t(), mod.get_mpz_t()) == 0)
    throw Error("internal: unit residue not invertible");
  return make(p, prec, val, nu * inv);
}

Padic Padic::from_rational(const Rational& r, long p, long prec) {
  return from_rational(r.numerator(), r.denominator(), p, prec);
}

long Padic::valuation() const {
  if (zero_)
    throw DomainError("valuation of a value that is zero at precision " +
                      std::to_string(prec_) + " is indeterminate");
  return val_;
}

const mpz_class& Padic::unit() const {
  if (zero_) throw DomainError("unit part of zero at precision");
  return unit_;
}

mpz_class Padic::residue() const {
  if (zero_) return 0;
  if (val_ < 0)
    throw DomainError("no integer representative: valuation " +
                      std::to_string(val_) + " < 0");
  return unit_ * pow_p(p_, val_);
}

Padic Padic::operator-() const {
  if (zero_) return *this;
  return make(p_, prec_, val_, pow_p(p_, prec_ - val_) - unit_);
}

Padic operator+(const Padic& a, const Padic& b) {
  Padic::require_same_prime(a, b);
  long prec = std::min(a.prec_, b.prec_);
  if (a.zero_ && b.zero_) return Padic::zero_at(a.p_, prec);
  long v0 = std::min(a.valuation_lower_bound(), b.valuation_lower_bound());
  mpz_class s = 0;
  if (!a.zero_) s += a.unit_ * pow_p(a.p_, a.val_ - v0);
  if (!b.zero_) s += b.unit_ * pow_p(a.p_, b.val_ - v0);
  return Padic::make(a.p_, prec, v0, std::move(s));
}

Padic operator-(const Padic& a, const Padic& b) { return a + (-b); }

Padic operator*(const Padic& a, const Padic& b) {
  Padic::require_same_prime(a, b);
  long prec = std::min(a.prec_ + b.valuation_lower_bound(),
                       b.prec_ + a.valuation_lower_bound());
  if (a.zero_ || b.zero_)
    return Padic::zero_at(a.p_, std::max<long>(prec, 1));
  return Padic::make(a.p_, prec, a.val_ + b.val_, a.unit_ * b.unit_);
}

Padic operator/(const Padic& a, const Padic& b) {
  Padic::require_same_prime(a, b);
  if (b.zero_)
    throw IndeterminateDivisionError(
        "division by a value that is zero at precision " +
        std::to_string(b.prec_));
  long prec = std::min(a.prec_, b.prec_) - b.val_;
  if (prec < 1)
    throw PrecisionError(
        "division leaves no certified digits (divisor valuation " +
        std::to_string(b.val_) + ")");
  if (a.zero_) return Padic::zero_at(a.p_, prec);
  long val = a.val_ - b.val_;
  long rel = prec - val;
  if (rel <= 0) return Padic::zero_at(a.p_, prec);
  mpz_class mod = pow_p(a.p_, rel);
  mpz_class inv;
  if (mpz_invert(inv.get_mpz_t(), b.unit_.get_mpz_t(), mod.get_mpz_t()) == 0)
    throw Error("internal: unit residue not invertible");
  return Padic::make(a.p_, prec, val, a.unit_ * inv);
}

Padic Padic::truncated(long new_prec) const {
  if (new_prec > prec_)
    throw DomainError("cannot raise precision " + std::to_string(prec_) +
                      " to " + std::to_string(new_prec) + " by truncation");
  if (new_prec < 1)
    throw PrecisionError("truncation to precision " +
                         std::to_string(new_prec));
  if (zero_ || val_ >= new_prec) return zero_at(p_, new_prec);
  return make(p_, new_prec, val_, unit_);
}

TriBool Padic::agree_mod(const Padic& x, const Padic& y, long k) {
  require_same_prime(x, y);
  Padic d = x - y;
  if (d.zero_) return d.prec_ >= k ? TriBool::kTrue : TriBool::kUnknown;
  // Nonzero difference: the valuation is exact, so the answer is certified
  // either way.
  return d.val_ >= k ? TriBool::kTrue : TriBool::kFalse;
}

bool identical(const Padic& a, const Padic& b) {
  return a.p_ == b.p_ && a.prec_ == b.prec_ && a.zero_ == b.zero_ &&
         a.val_ == b.val_ && a.unit_ == b.unit_;
}

std::string Padic::str() const {
  const std::string base = std::to_string(p_);
  const std::string tail = "O(" + base + "^" + std::to_string(prec_) + ")";
  if (zero_) return tail;
  if (val_ < 0)
    return unit_.get_str() + "*" + base + "^" + std::to_string(val_) + " + " +
           tail;
  mpz_class rep = residue();
  std::string out;
  for (long i = 0; i < prec_; ++i) {
    mpz_class digit = rep % p_;
    rep /= p_;
    out += digit.get_str();
    if (i == 1) out += "*" + base;
    if (i >= 2) out += "*" + base + "^" + std::to_string(i);
    out += " + ";
  }
  return out + tail;
}

namespace {

/// Minimal recursive-descent reader shared by the padic renderings.
class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::size_t pos() const { return i_; }
  bool done() const { return i_ == text_.size(); }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("invalid p-adic literal '" + std::string(text_) +
                         "': " + msg,
                     i_);
  }

  bool accept(std::string_view token) {
    if (text_.substr(i_, token.size()) != token) return false;
    i_ += token.size();
    return true;
  }

  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }

  mpz_class integer() {
    std::size_t start = i_;
    if (i_ < text_.size() && text_[i_] == '-') ++i_;
    std::size_t digits_at = i_;
    while (i_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[i_])))
      ++i_;
    if (i_ == digits_at) fail("expected digits");
    return mpz_class(std::string(text_.substr(start, i_ - start)), 10);
  }

 private:
  std::string_view text_;
  std::size_t i_ = 0;
};

}  // namespace

namespace {

/// "O(p^M)" with a known or discovered base; returns (p, M).
std::pair<long, long> read_tail(Reader& r, long known_p) {
  mpz_class base = r.integer();
  if (known_p != 0 && base != known_p) r.fail("mismatched base in O(...)");
  r.expect("^");
  long prec = r.integer().get_si();
  r.expect(")");
  if (!r.done()) r.fail("trailing characters");
  return {base.get_si(), prec};
}

}  // namespace

Padic Padic::parse(std::string_view text) {
  Reader r(text);
  // Pure zero: O(p^M).
  if (r.accept("O(")) {
    auto [p, prec] = read_tail(r, 0);
    return zero_at(p, prec);
  }
  mpz_class first = r.integer();
  long p = 0;
  mpz_class acc = first;
  bool first_is_digit = true;  // leading constant of the digit form
  if (r.accept("*")) {
    mpz_class base = r.integer();
    p = base.get_si();
    r.expect("^");
    long e = r.integer().get_si();
    if (e < 0) {
      // Negative-valuation form: u*p^v + O(p^M) with u a positive unit.
      if (first <= 0 || first % p == 0)
        r.fail("unit must be positive and coprime to the base");
      r.expect(" + O(");
      auto [p2, prec] = read_tail(r, p);
      return from_rational(first, pow_p(p2, -e), p2, prec);
    }
    if (first < 0 || first >= p) r.fail("digit out of range for the base");
    first_is_digit = false;
    acc = first * pow_p(p, e);
  }
  // Digit form: accumulate d_i * p^i terms until the O(...) tail; every
  // digit must lie in the canonical range 0 <= d < p.
  for (;;) {
    r.expect(" + ");
    if (r.accept("O(")) {
      auto [p2, prec] = read_tail(r, p);
      if (first_is_digit && (first < 0 || first >= p2))
        r.fail("digit out of range for the base");
      return from_integer(acc, p2, prec);
    }
    mpz_class d = r.integer();
    r.expect("*");
    mpz_class base = r.integer();
    if (p == 0)
      p = base.get_si();
    else if (base != p)
      r.fail("mismatched base");
    if (d < 0 || d >= p) r.fail("digit out of range for the base");
    long e = 1;
    if (r.accept("^")) e = r.integer().get_si();
    acc += d * pow_p(p, e);
  }
}

Padic exp_p(const Padic& x) {
  long p = x.prime();
  long M = x.precision();
  if (x.is_zero()) return Padic::from_integer(1, p, M);
  long w = x.valuation();
  if (w < 1)
    throw ConvergenceDomainError(
        "exp_p requires valuation >= 1, got " + std::to_string(w));
  mpz_class X = x.residue();
  // Terms X^k/k! have exact valuation k*w - v_p(k!) >= k*w - (k-1)/(p-1),
  // which grows at slope >= w - 1/(p-1) > 0. Sum exactly over Q until every
  // remaining term is provably O(p^(M+2)), then reduce once.
  long K = ((M + 2) * (p - 1) - 1 + (w * (p - 1) - 1) - 1) /
           (w * (p - 1) - 1);  // ceil
  mpq_class term = 1, sum = 1;
  for (long k = 1; k <= K; ++k) {
    term *= X;
    term /= k;
    sum += term;
  }
  return Padic::from_rational(Rational(sum), p, M);
}

Padic log_p(const Padic& x) {
  long p = x.prime();
  Padic y = x - Padic::from_integer(1, p, x.precision());
  long M = y.precision();
  if (y.is_zero()) return Padic::zero_at(p, M);
  long w = y.valuation();
  if (w < 1)
    throw ConvergenceDomainError(
        "log_p requires v(x - 1) >= 1, got " + std::to_string(w));
  mpz_class Y = y.residue();
  // Terms Y^k/k have valuation >= k*w - floor(log_p k), a non-decreasing
  // lower bound; stop once it clears M + 2.
  mpq_class power = 1, sum = 0;
  long ilog = 0;       // floor(log_p k)
  long next_pow = p;   // p^(ilog+1)
  for (long k = 1;; ++k) {
    if (k == next_pow) {
      ++ilog;
      next_pow *= p;
    }
    power *= Y;
    mpq_class term = power / k;
    if (k % 2 == 0) term = -term;
    sum += term;
    if (k * w - ilog >= M + 2) break;
  }
  return Padic::from_rational(Rational(sum), p, M);
}

Padic teichmuller(const mpz_class& a, long p, long prec) {
  if (!is_odd_prime(p))
    throw DomainError("p must be an odd prime, got " + std::to_string(p));
  if (prec < 1) throw PrecisionError("precision must be >= 1");
  mpz_class g = gcd(a, mpz_class(p));
  if (g != 1)
    throw DomainError("teichmuller requires gcd(a, p) = 1, got a = " +
                      a.get_str());
  mpz_class mod = pow_p(p, prec);
  mpz_class t = a % mod;
  if (t < 0) t += mod;
  mpz_class pe(p);
  // t_n = a^(p^n) agrees with the root of unity mod p^(n+1), so the
  // iteration reaches its fixed point within prec steps.
  for (long i = 0; i <= prec + 1; ++i) {
    mpz_class next;
    mpz_powm(next.get_mpz_t(), t.get_mpz_t(), pe.get_mpz_t(), mod.get_mpz_t());
    if (next == t) return Padic::from_integer(t, p, prec);
    t = next;
  }
  throw Error("internal: teichmuller iteration failed to stabilize");
}

Padic q_pow(const Padic& q, const Padic& x) {
  if (q.prime() != x.prime())
    throw DomainError("q_pow with mixed primes");
  Padic qm1 = q - Padic::from_integer(1, q.prime(), q.precision());
  if (qm1.valuation_lower_bound() < 1)
    throw ConvergenceDomainError("q_pow requires v(q - 1) >= 1");
  if (x.valuation_lower_bound() < 0)
    throw ConvergenceDomainError("q_pow requires a p-integral exponent");
  return exp_p(x * log_p(q));
}

}  // namespace qeuler
