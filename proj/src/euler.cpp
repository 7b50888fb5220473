#include "qeuler/euler.hpp"

namespace qeuler {

std::vector<Rational> classical_euler_table(long K) {
  if (K < 0) throw DomainError("degree must be >= 0");
  std::vector<Rational> e;
  e.reserve(static_cast<std::size_t>(K) + 1);
  e.push_back(Rational(1));
  // (e^t + 1) * sum E_n t^n/n! = 2 gives, in degree n >= 1:
  //   sum_{k=0..n} C(n,k) E_k + E_n = 0, i.e. E_n = -(1/2) sum_{k<n} C(n,k) E_k.
  for (long n = 1; n <= K; ++n) {
    Rational acc(0);
    for (long k = 0; k < n; ++k)
      acc += Rational(binomial(n, k)) * e[static_cast<std::size_t>(k)];
    e.push_back(-acc / Rational(2));
  }
  return e;
}

Rational classical_euler(long m) {
  return classical_euler_table(m).back();
}

}  // namespace qeuler
