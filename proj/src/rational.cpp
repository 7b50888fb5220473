#include "qeuler/rational.hpp"

#include <cctype>

namespace qeuler {

long int_valuation(const mpz_class& n, long p) {
  if (n == 0) return kValInfinity;
  mpz_class reduced;
  // mpz_remove strips every factor p and reports how many it removed.
  unsigned long k = mpz_remove(reduced.get_mpz_t(), n.get_mpz_t(),
                               mpz_class(p).get_mpz_t());
  return static_cast<long>(k);
}

long Rational::valuation(long p) const {
  if (is_zero()) return kValInfinity;
  return int_valuation(numerator(), p) - int_valuation(denominator(), p);
}

std::string Rational::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational Rational::parse(std::string_view text) {
  auto fail = [&](const char* msg, std::size_t pos) -> Rational {
    throw ParseError(std::string("invalid rational '") + std::string(text) +
                         "': " + msg,
                     pos);
  };
  std::size_t i = 0;
  auto read_integer = [&]() -> mpz_class {
    std::size_t start = i;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    std::size_t digits_at = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
      ++i;
    if (i == digits_at) fail("expected digits", start);
    return mpz_class(std::string(text.substr(start, i - start)), 10);
  };
  mpz_class num = read_integer();
  mpz_class den = 1;
  if (i < text.size() && text[i] == '/') {
    ++i;
    den = read_integer();
    if (den == 0) fail("zero denominator", i);
  }
  if (i != text.size()) fail("trailing characters", i);
  return Rational(num, den);
}

bool is_odd_prime(long p) {
  if (p < 3 || p % 2 == 0) return false;
  for (long d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

}  // namespace qeuler
