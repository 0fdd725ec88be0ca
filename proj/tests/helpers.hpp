#pragma once

// Shared fixtures for the weil3 test binaries.  All randomness is seeded
// deterministically so failures reproduce.

#include <random>
#include <vector>

#include "weil3/core.hpp"

namespace weil3::testing {

inline std::mt19937_64 make_rng(uint64_t salt = 0) { return std::mt19937_64(0x77e1137ULL ^ salt); }

inline long rand_long(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

// All prime powers q <= 25 (the dataset range).
inline const std::vector<FieldParams>& small_fields() {
  static const std::vector<FieldParams> fs = [] {
    std::vector<FieldParams> v;
    for (long q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25})
      v.push_back(FieldParams::from_q(q));
    return v;
  }();
  return fs;
}

// Uniform random coefficient triple inside the prefilter box (not necessarily
// on the root locus).
inline WeilCoeffs rand_coeffs(std::mt19937_64& rng, const FieldParams& f) {
  long q = static_cast<long>(f.q.get_si());
  long sb = static_cast<long>(isqrt(36 * f.q).get_si());
  long ub = static_cast<long>(isqrt(400 * f.q * f.q * f.q).get_si());
  return WeilCoeffs{f, Int(rand_long(rng, -sb, sb)), Int(rand_long(rng, -15 * q, 15 * q)),
                    Int(rand_long(rng, -ub, ub))};
}

// Coefficients from a real cubic with prescribed integer roots y1,y2,y3:
// (s,t,u) = (a, b+3q, c+2qs) for (x-y1)(x-y2)(x-y3) = x^3+ax^2+bx+c.
inline WeilCoeffs coeffs_from_real_roots(const FieldParams& f, const Int& y1, const Int& y2,
                                         const Int& y3) {
  Int a = -(y1 + y2 + y3);
  Int b = y1 * y2 + y1 * y3 + y2 * y3;
  Int c = -y1 * y2 * y3;
  WeilCoeffs w;
  w.field = f;
  w.s = a;
  w.t = b + 3 * f.q;
  w.u = c + 2 * f.q * a;
  return w;
}

}  // namespace weil3::testing
