#pragma once

// Exact integer/rational helpers shared by all weil3 modules.
// All routines are deterministic and overflow-free (GMP-backed).

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

namespace weil3 {

using Int = mpz_class;
using Rat = mpq_class;

inline Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// floor(sqrt(n)); requires n >= 0.
inline Int isqrt(const Int& n) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

inline bool is_perfect_square(const Int& n) {
  return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

// Floor division, well-defined for negative operands; requires b > 0.
inline Int fdiv(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Ceiling division, well-defined for negative operands; requires b > 0.
inline Int cdiv(const Int& a, const Int& b) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Least nonnegative residue; requires m > 0.
inline Int mod_nonneg(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

// #{ k in [lo, hi] : k ≡ res (mod m) }; m >= 1, any res.
inline Int count_in_range_mod(const Int& lo, const Int& hi, const Int& m, const Int& res) {
  if (lo > hi) return 0;
  return fdiv(hi - res, m) - fdiv(lo - 1 - res, m);
}

// p-adic valuation of n; requires n != 0, p >= 2.
inline long valuation(const Int& n, long p) {
  Int tmp;
  Int pz(p);
  return static_cast<long>(mpz_remove(tmp.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t()));
}

bool is_prime(long n);

struct PrimePower {
  long p;  // prime
  long r;  // exponent >= 1
};

// Decomposes q = p^r with p prime, or nullopt if q is not a prime power > 1.
std::optional<PrimePower> as_prime_power(const Int& q);

// Positive divisors of |n| in increasing order; requires n != 0.
std::vector<Int> divisors(const Int& n);

// Squarefreeness of |n| by trial division; requires n != 0 (|n| = 1 counts as squarefree).
bool is_squarefree(const Int& n);

}  // namespace weil3
