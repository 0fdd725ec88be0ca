#include "weil3/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace weil3 {

namespace {

const UInterval kEmpty{Int(0), Int(-1)};

using i128 = __int128;
using u128 = unsigned __int128;

i128 floordiv_i128(i128 a, i128 b) {  // b > 0
  i128 q = a / b;
  if (a % b < 0) --q;
  return q;
}

i128 ceildiv_i128(i128 a, i128 b) {  // b > 0
  i128 q = a / b;
  if (a % b > 0) ++q;
  return q;
}

i128 isqrt_i128(i128 n) {
  if (n <= 0) return 0;
  auto r = static_cast<i128>(sqrtl(static_cast<long double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// #{ k in [lo, hi] : k = res (mod m) }, m >= 1.
long long count_mod_ll(long long lo, long long hi, long long m, long long res) {
  if (lo > hi) return 0;
  auto fd = [](long long a, long long b) {
    long long q = a / b;
    if (a % b < 0) --q;
    return q;
  };
  return fd(hi - res, m) - fd(lo - 1 - res, m);
}

Int int_from_u128(u128 v) {
  Int hi(static_cast<unsigned long>(v >> 64));
  Int lo(static_cast<unsigned long>(v & ~0ULL));
  return (hi << 64) + lo;
}

}  // namespace

namespace detail {

// Both implementations intersect two exact c-bands for the cubic
// y^3 + ay^2 + by + c, then translate u = c + 2qs:
//
//   discriminant band   27c^2 - 2Kc + (4b^3 - a^2 b^2) <= 0 with K = 9ab - 2a^3,
//                       i.e. c between (K -+ 2 sqrt(d^3))/27 where d = a^2 - 3b
//                       (the identity K^2 - 27(4b^3 - a^2 b^2) = 4d^3 makes the
//                       quadratic's roots exactly those values);
//   endpoint band       |4aq + c| <= B sqrt(q) with B = 8q + 2b, from
//                       g(2 sqrt(q)) >= 0 >= -g(-2 sqrt(q)).
//
// Preceded by the c-independent gates: g'(+-2 sqrt(q)) = (12q + b) +- 4a sqrt(q)
// both >= 0, d >= 0 (real critical points) and B >= 0 (else the endpoint band
// is empty).  Integer seeds from isqrt are corrected by exact discriminant
// evaluation; each correction loop moves at most two steps.

UInterval u_interval_exact(const FieldParams& field, const Int& s, const Int& t) {
  const Int& q = field.q;
  Int a = s, b = t - 3 * q;

  if (quadext_sign(QuadExt{12 * q + b, 4 * a}, q) < 0) return kEmpty;
  if (quadext_sign(QuadExt{12 * q + b, -4 * a}, q) < 0) return kEmpty;
  Int d = a * a - 3 * b;
  if (d < 0) return kEmpty;
  Int B = 8 * q + 2 * b;
  if (B < 0) return kEmpty;

  Int m = isqrt(B * B * q);
  Int lo_end = -4 * a * q - m, hi_end = -4 * a * q + m;

  Int K = 9 * a * b - 2 * a * a * a;
  Int e = isqrt(d * d * d);
  Int lo_disc = cdiv(K - 2 * e, 27);
  Int hi_disc = fdiv(K + 2 * e, 27);
  auto disc_ok = [&](const Int& c) { return RealCubic{a, b, c}.discriminant() >= 0; };
  while (disc_ok(hi_disc + 1)) ++hi_disc;
  while (hi_disc >= lo_disc && !disc_ok(hi_disc)) --hi_disc;
  while (disc_ok(lo_disc - 1)) --lo_disc;
  while (lo_disc <= hi_disc && !disc_ok(lo_disc)) ++lo_disc;

  Int clo = std::max(lo_disc, lo_end), chi = std::min(hi_disc, hi_end);
  if (clo > chi) return kEmpty;
  Int off = 2 * q * s;
  return {clo + off, chi + off};
}

void u_interval_fast(long q, long s, long long t, long long& lo, long long& hi) {
  lo = 0;
  hi = -1;
  i128 a = s, b = static_cast<i128>(t) - 3 * static_cast<i128>(q), Q = q;

  // sign of r + i*sqrt(q) >= 0, |r| <= 30q and |i| <= 24 sqrt(q) here
  auto nonneg = [&](i128 r, i128 i) {
    if (r >= 0 && i >= 0) return true;
    if (r <= 0 && i <= 0) return r == 0 && i == 0;
    if (r >= 0) return r * r >= i * i * Q;
    return i * i * Q >= r * r;
  };
  i128 rat = 12 * Q + b;
  if (!nonneg(rat, 4 * a) || !nonneg(rat, -4 * a)) return;
  i128 d = a * a - 3 * b;
  if (d < 0) return;
  i128 B = 8 * Q + 2 * b;
  if (B < 0) return;

  i128 m = isqrt_i128(B * B * Q);
  i128 lo_end = -4 * a * Q - m, hi_end = -4 * a * Q + m;

  i128 K = 9 * a * b - 2 * a * a * a;
  i128 e = isqrt_i128(d * d * d);
  i128 lo_disc = ceildiv_i128(K - 2 * e, 27);
  i128 hi_disc = floordiv_i128(K + 2 * e, 27);
  auto disc_ok = [&](i128 c) {
    i128 disc = 18 * a * b * c - 4 * a * a * a * c + a * a * b * b - 4 * b * b * b - 27 * c * c;
    return disc >= 0;
  };
  while (disc_ok(hi_disc + 1)) ++hi_disc;
  while (hi_disc >= lo_disc && !disc_ok(hi_disc)) --hi_disc;
  while (disc_ok(lo_disc - 1)) --lo_disc;
  while (lo_disc <= hi_disc && !disc_ok(lo_disc)) ++lo_disc;

  i128 clo = std::max(lo_disc, lo_end), chi = std::min(hi_disc, hi_end);
  if (clo > chi) return;
  i128 off = 2 * Q * static_cast<i128>(s);
  lo = static_cast<long long>(clo + off);
  hi = static_cast<long long>(chi + off);
}

}  // namespace detail

UInterval u_interval(const FieldParams& field, const Int& s, const Int& t) {
  // Bounds implied by the locus itself; they also keep the fast path in range.
  if (s * s > 36 * field.q || t < -field.q || t > 15 * field.q) return kEmpty;
  if (field.q.fits_slong_p() && field.q.get_si() <= detail::kFastPathMaxQ) {
    long long lo, hi;
    detail::u_interval_fast(field.q.get_si(), s.get_si(),
                            static_cast<long long>(t.get_si()), lo, hi);
    if (lo > hi) return kEmpty;
    return {Int(static_cast<long>(lo)), Int(static_cast<long>(hi))};
  }
  return detail::u_interval_exact(field, s, t);
}

Int s_bound(const FieldParams& field) { return isqrt(36 * field.q); }

void for_each_valid(const FieldParams& field,
                    const std::function<void(const WeilCoeffs&)>& fn) {
  Int smax = s_bound(field);
  for (Int s = -smax; s <= smax; ++s) {
    Int tmax = 3 * field.q + fdiv(s * s, 3);  // beyond it d < 0, interval empty
    for (Int t = -field.q; t <= tmax; ++t) {
      UInterval iv = u_interval(field, s, t);
      for (Int u = iv.lo; u <= iv.hi; ++u) fn(WeilCoeffs{field, s, t, u});
    }
  }
}

std::vector<WeilCoeffs> dataset_coeffs(const std::vector<IsogenyRecord>& records,
                                       const FieldParams& field) {
  std::vector<WeilCoeffs> out;
  for (const auto& rec : records)
    if (rec.coeffs.field.q == field.q) out.push_back(rec.coeffs);
  if (out.empty())
    throw std::runtime_error("dataset admissibility: no records for q = " +
                             field.q.get_str());
  std::sort(out.begin(), out.end(), [](const WeilCoeffs& x, const WeilCoeffs& y) {
    if (x.s != y.s) return x.s < y.s;
    if (x.t != y.t) return x.t < y.t;
    return x.u < y.u;
  });
  return out;
}

namespace {

struct TallyAcc {
  u128 locus = 0, ordinary = 0, parity_locus = 0, parity_ordinary = 0;
};

// One s-strip of the fast-path sweep; strided so threads interleave.
void tally_strip(long q, long p, long s_from, long s_to, long stride, TallyAcc& acc) {
  const bool even_q = (p == 2);
  for (long s = s_from; s <= s_to; s += stride) {
    const long long tmax = 3LL * q + static_cast<long long>(s) * s / 3;
    const bool s_odd = (s % 2 != 0);
    for (long long t = -q; t <= tmax; ++t) {
      long long lo, hi;
      detail::u_interval_fast(q, s, t, lo, hi);
      if (lo > hi) continue;
      const long long len = hi - lo + 1;
      const long long n_odd = count_mod_ll(lo, hi, 2, 1);
      const bool t_odd = (t % 2 != 0);
      acc.locus += static_cast<u128>(len);
      if (even_q) {
        acc.ordinary += static_cast<u128>(n_odd);
        if (!s_odd && t_odd) {  // (0,1,1)
          acc.parity_locus += static_cast<u128>(n_odd);
          acc.parity_ordinary += static_cast<u128>(n_odd);
        } else if (s_odd && !t_odd) {  // (1,0,1)
          acc.parity_locus += static_cast<u128>(n_odd);
          acc.parity_ordinary += static_cast<u128>(n_odd);
        } else if (s_odd && t_odd) {  // (1,1,0): u even, never ordinary
          acc.parity_locus += static_cast<u128>(len - n_odd);
        }
      } else {
        acc.ordinary += static_cast<u128>(len - count_mod_ll(lo, hi, p, 0));
        if (!t_odd) {
          acc.parity_locus += static_cast<u128>(n_odd);
          // odd and divisible by p <=> u = p (mod 2p)
          acc.parity_ordinary +=
              static_cast<u128>(n_odd - count_mod_ll(lo, hi, 2 * p, p));
        }
      }
    }
  }
}

LatticeTallies tallies_gmp(const FieldParams& field) {
  LatticeTallies out{0, 0, 0, 0};
  const Int& q = field.q;
  const Int p(field.p);
  const bool even_q = (field.p == 2);
  Int smax = s_bound(field);
  for (Int s = -smax; s <= smax; ++s) {
    Int tmax = 3 * q + fdiv(s * s, 3);
    const bool s_odd = mpz_odd_p(s.get_mpz_t()) != 0;
    for (Int t = -q; t <= tmax; ++t) {
      UInterval iv = detail::u_interval_exact(field, s, t);
      if (iv.empty()) continue;
      Int len = iv.length();
      Int n_odd = count_in_range_mod(iv.lo, iv.hi, 2, 1);
      const bool t_odd = mpz_odd_p(t.get_mpz_t()) != 0;
      out.locus += len;
      if (even_q) {
        out.ordinary += n_odd;
        if (!s_odd && t_odd) {
          out.parity_locus += n_odd;
          out.parity_ordinary += n_odd;
        } else if (s_odd && !t_odd) {
          out.parity_locus += n_odd;
          out.parity_ordinary += n_odd;
        } else if (s_odd && t_odd) {
          out.parity_locus += len - n_odd;
        }
      } else {
        out.ordinary += len - count_in_range_mod(iv.lo, iv.hi, p, 0);
        if (!t_odd) {
          out.parity_locus += n_odd;
          out.parity_ordinary += n_odd - count_in_range_mod(iv.lo, iv.hi, 2 * p, p);
        }
      }
    }
  }
  return out;
}

}  // namespace

LatticeTallies lattice_tallies(const FieldParams& field, int jobs) {
  if (jobs < 1) jobs = 1;
  if (!(field.q.fits_slong_p() && field.q.get_si() <= detail::kFastPathMaxQ))
    return tallies_gmp(field);

  const long q = field.q.get_si();
  const long smax = s_bound(field).get_si();
  std::vector<TallyAcc> accs(static_cast<size_t>(jobs));
  std::vector<std::thread> pool;
  for (int j = 0; j < jobs; ++j)
    pool.emplace_back(tally_strip, q, field.p, -smax + j, smax, jobs,
                      std::ref(accs[static_cast<size_t>(j)]));
  for (auto& th : pool) th.join();

  u128 locus = 0, ord = 0, pl = 0, po = 0;
  for (const auto& a : accs) {
    locus += a.locus;
    ord += a.ordinary;
    pl += a.parity_locus;
    po += a.parity_ordinary;
  }
  return {int_from_u128(locus), int_from_u128(ord), int_from_u128(pl),
          int_from_u128(po)};
}

Int count_valid(const FieldParams& field, int jobs) {
  return lattice_tallies(field, jobs).locus;
}

}  // namespace weil3
