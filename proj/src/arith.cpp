#include "weil3/arith.hpp"

#include <algorithm>

namespace weil3 {

bool is_prime(long n) {
  if (n < 2) return false;
  Int nz(n);
  // 2 = definitely prime, 1 = probably; deterministic for long-sized inputs.
  return mpz_probab_prime_p(nz.get_mpz_t(), 40) != 0;
}

std::optional<PrimePower> as_prime_power(const Int& q) {
  if (q < 2) return std::nullopt;
  if (mpz_perfect_power_p(q.get_mpz_t()) == 0) {
    // q itself must be prime.
    if (mpz_probab_prime_p(q.get_mpz_t(), 40) == 0) return std::nullopt;
    return PrimePower{static_cast<long>(q.get_si()), 1};
  }
  // Find the smallest prime factor by trial division, then check q = p^r.
  Int p = 0;
  if (mpz_even_p(q.get_mpz_t())) {
    p = 2;
  } else {
    for (Int d = 3; d * d <= q; d += 2) {
      if (q % d == 0) {
        p = d;
        break;
      }
    }
  }
  if (p == 0) return std::nullopt;  // perfect power of a prime would have a small factor
  long r = 0;
  Int rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++r;
  }
  if (rest != 1) return std::nullopt;
  return PrimePower{static_cast<long>(p.get_si()), r};
}

std::vector<Int> divisors(const Int& n) {
  Int m = abs(n);
  std::vector<Int> out;
  for (Int d = 1; d * d <= m; ++d) {
    if (m % d == 0) {
      out.push_back(d);
      if (d * d != m) out.push_back(m / d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_squarefree(const Int& n) {
  Int m = abs(n);
  if (m == 0) return false;
  long v2 = valuation(m, 2);
  if (v2 >= 2) return false;
  if (v2 == 1) m /= 2;
  for (Int d = 3; d * d <= m; d += 2) {
    if (m % d == 0) {
      m /= d;
      if (m % d == 0) return false;
    }
  }
  return true;
}

}  // namespace weil3
