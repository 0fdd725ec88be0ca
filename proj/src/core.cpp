#include "weil3/core.hpp"

#include <algorithm>
#include <numeric>

namespace weil3 {

// ---------------------------------------------------------------------------
// FieldParams

FieldParams FieldParams::make(long p, long r) {
  if (!is_prime(p)) throw std::invalid_argument("FieldParams: p must be prime");
  if (r < 1) throw std::invalid_argument("FieldParams: r must be >= 1");
  FieldParams f;
  f.p = p;
  f.r = r;
  f.q = pow_int(Int(p), static_cast<unsigned long>(r));
  return f;
}

FieldParams FieldParams::from_q(const Int& q) {
  auto pp = as_prime_power(q);
  if (!pp) throw std::invalid_argument("FieldParams: q = " + q.get_str() + " is not a prime power");
  return make(pp->p, pp->r);
}

Int FieldParams::sqrt_q() const {
  if (!q_is_square()) throw std::logic_error("FieldParams: sqrt_q on non-square q");
  return pow_int(Int(p), static_cast<unsigned long>(r / 2));
}

// ---------------------------------------------------------------------------
// Coefficients

RealCubic real_weil(const WeilCoeffs& w) {
  const Int& q = w.field.q;
  return RealCubic{w.s, w.t - 3 * q, w.u - 2 * q * w.s};
}

std::array<Int, 7> weil_poly_coeffs(const WeilCoeffs& w) {
  const Int& q = w.field.q;
  return {q * q * q, q * q * w.s, q * w.t, w.u, w.t, w.s, Int(1)};
}

bool passes_prefilter(const WeilCoeffs& w) {
  const Int& q = w.field.q;
  if (w.s * w.s > 36 * q) return false;
  if (abs(w.t) > 15 * q) return false;
  if (w.u * w.u > 400 * q * q * q) return false;
  return true;
}

// ---------------------------------------------------------------------------
// QuadExt

int quadext_sign(const QuadExt& v, const Int& q) {
  int sr = sgn(v.rat);
  int si = sgn(v.irr);
  if (si == 0) return sr;
  if (sr == 0) return si;
  if (sr == si) return sr;
  // Opposite signs: compare rat^2 against irr^2 * q; the larger magnitude wins.
  int cmp = sgn(Int(v.rat * v.rat - v.irr * v.irr * q));
  return cmp == 0 ? 0 : (cmp > 0 ? sr : si);
}

QuadExt cubic_at_2sqrtq(const RealCubic& g, const Int& q, int side) {
  // g(+-2 sqrt(q)) = (4 a q + c) +- (8 q + 2 b) sqrt(q)
  QuadExt v{4 * g.a * q + g.c, 8 * q + 2 * g.b};
  if (side < 0) v.irr = -v.irr;
  return v;
}

QuadExt cubic_deriv_at_2sqrtq(const RealCubic& g, const Int& q, int side) {
  // g'(+-2 sqrt(q)) = (12 q + b) +- 4 a sqrt(q)
  QuadExt v{12 * q + g.b, 4 * g.a};
  if (side < 0) v.irr = -v.irr;
  return v;
}

bool is_weil_root_locus(const WeilCoeffs& w) {
  if (!passes_prefilter(w)) return false;
  const Int& q = w.field.q;
  RealCubic g = real_weil(w);

  // Monic cubic with all roots real in [-2 sqrt(q), 2 sqrt(q)]:
  //   disc >= 0 together with sign conditions on g, g', g'' at both endpoints
  //   (repeated-Rolle bound criterion; g'' reduces to a^2 <= 36 q).
  if (g.discriminant() < 0) return false;
  if (g.a * g.a > 36 * q) return false;
  if (quadext_sign(cubic_deriv_at_2sqrtq(g, q, +1), q) < 0) return false;
  if (quadext_sign(cubic_deriv_at_2sqrtq(g, q, -1), q) < 0) return false;
  if (quadext_sign(cubic_at_2sqrtq(g, q, +1), q) < 0) return false;
  if (quadext_sign(cubic_at_2sqrtq(g, q, -1), q) > 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Power sums

Int power_sum(const WeilCoeffs& w, unsigned long n) {
  if (n == 0) return 6;
  const Int& q = w.field.q;
  const Int &s = w.s, &t = w.t, &u = w.u;
  switch (n) {
    case 1:
      return s;
    case 2:
      return s * s - 2 * t;
    case 3:
      return s * s * s - 3 * s * t + 3 * u;
    case 4:
      return s * s * s * s - 4 * s * s * t + 2 * t * t + 4 * s * u - 4 * q * t;
    case 5:
      return pow_int(s, 5) - 5 * s * s * s * t + 5 * s * s * u + 5 * s * t * t - 5 * t * u -
             5 * q * s * t + 5 * q * q * s;
    case 6:
      return pow_int(s, 6) - 6 * pow_int(s, 4) * t + 6 * s * s * s * u + 9 * s * s * t * t -
             6 * q * s * s * t - 12 * s * t * u + 6 * q * q * s * s - 2 * t * t * t + 3 * u * u +
             6 * q * t * t - 6 * q * q * q;
    default:
      break;
  }
  // The closed forms above are the power sums of the sign-flipped root system
  // whose elementary symmetric values are (s, t, u, qt, q^2 s, q^3); those
  // roots satisfy b^6 = s b^5 - t b^4 + u b^3 - qt b^2 + q^2 s b - q^3, hence
  // the matching recurrence for n > 6, iterated over a sliding window.
  std::array<Int, 6> p;
  for (unsigned long k = 1; k <= 6; ++k) p[k - 1] = power_sum(w, k);
  for (unsigned long k = 7; k <= n; ++k) {
    Int next = s * p[5] - t * p[4] + u * p[3] - q * t * p[2] + q * q * s * p[1] -
               q * q * q * p[0];
    std::rotate(p.begin(), p.begin() + 1, p.end());
    p[5] = std::move(next);
  }
  return p[5];
}

Int curve_point_count(const WeilCoeffs& w, unsigned long n) {
  return 1 + pow_int(w.field.q, n) - power_sum(w, n);
}

// ---------------------------------------------------------------------------
// Newton polygon

std::string to_string(const Slope& s) {
  if (s.num == 0) return "0";
  if (s.num == s.den) return "1";
  return std::to_string(s.num) + "/" + std::to_string(s.den);
}

std::vector<Slope> newton_slopes(const std::vector<Int>& coeffs, long p, long r) {
  if (coeffs.size() < 2) throw std::invalid_argument("newton_slopes: need degree >= 1");
  if (coeffs.front() == 0 || coeffs.back() == 0)
    throw std::invalid_argument("newton_slopes: constant and leading coefficients must be nonzero");

  // Finite lattice points (i, v_p(a_i)); zero coefficients drop out (v = +inf).
  struct Pt {
    long x, y;
  };
  std::vector<Pt> pts;
  for (size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] != 0) pts.push_back({static_cast<long>(i), valuation(coeffs[i], p)});
  }

  // Lower convex hull, left to right (monotone chain).
  std::vector<Pt> hull;
  for (const Pt& pt : pts) {
    while (hull.size() >= 2) {
      const Pt& a = hull[hull.size() - 2];
      const Pt& b = hull[hull.size() - 1];
      // Keep b only if it is strictly below segment a->pt.
      long cross = (b.x - a.x) * (pt.y - a.y) - (pt.x - a.x) * (b.y - a.y);
      if (cross <= 0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(pt);
  }

  // Segment from (x1,y1) to (x2,y2) contributes x2-x1 root valuations
  // (y1-y2)/(x2-x1), normalized by r.
  std::vector<Slope> out;
  for (size_t k = 1; k < hull.size(); ++k) {
    long run = hull[k].x - hull[k - 1].x;
    long num = hull[k - 1].y - hull[k].y;
    long den = run * r;
    long g = std::gcd(std::abs(num), den);
    if (g == 0) g = 1;
    Slope sl{static_cast<int>(num / g), static_cast<int>(den / g)};
    for (long i = 0; i < run; ++i) out.push_back(sl);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Slope> newton_polygon(const WeilCoeffs& w) {
  auto c = weil_poly_coeffs(w);
  return newton_slopes(std::vector<Int>(c.begin(), c.end()), w.field.p, w.field.r);
}

int p_rank_of(const std::vector<Slope>& slopes) {
  return static_cast<int>(std::count_if(slopes.begin(), slopes.end(),
                                        [](const Slope& s) { return s.num == 0; }));
}

bool is_ordinary(const WeilCoeffs& w) { return w.u % w.field.p != 0; }

// ---------------------------------------------------------------------------
// Factorization shape

FactorShape factor_shape(const RealCubic& g, const FieldParams& field) {
  // Candidate integer roots: 0 if c = 0, otherwise divisors of c, clipped to
  // the root bound ceil(2 sqrt(q)).
  Int bound = isqrt(4 * field.q);
  if (bound * bound < 4 * field.q) ++bound;

  std::vector<Int> candidates;
  if (g.c == 0) {
    candidates.push_back(0);
  } else {
    for (const Int& d : divisors(g.c)) {
      if (d <= bound) {
        candidates.push_back(d);
        candidates.push_back(-d);
      }
    }
    std::sort(candidates.begin(), candidates.end());
  }

  for (const Int& rho : candidates) {
    if (g.eval(rho) != 0) continue;
    // g = (y - rho)(y^2 + delta y + eps)
    Int delta = g.a + rho;
    Int eps = g.b + rho * g.a + rho * rho;
    Int disc = delta * delta - 4 * eps;
    if (is_perfect_square(disc)) {
      Int wdt = isqrt(disc);
      // Quadratic roots (−delta ± w)/2; stored entries are negated roots.
      std::array<Int, 3> e = {-rho, (delta - wdt) / 2, (delta + wdt) / 2};
      std::sort(e.begin(), e.end());
      return FactorShape{ThreeLinear{e[0], e[1], e[2]}};
    }
    return FactorShape{LinearQuadratic{-rho, delta, eps}};
  }
  return FactorShape{IrreducibleCubic{}};
}

bool splits_over_integers_further(const FactorShape& shape, const FieldParams& field) {
  Int fourq = 4 * field.q;
  auto hits = [&](const Int& alpha) { return alpha * alpha == fourq; };
  if (shape.is_three_linear()) {
    const auto& tl = shape.three_linear();
    return hits(tl.alpha) || hits(tl.beta) || hits(tl.gamma);
  }
  if (shape.v.index() == 1) return hits(shape.linear_quadratic().alpha);
  return false;
}

std::array<Int, 3> type_vector(const FactorShape& shape) {
  if (!shape.is_three_linear())
    throw std::invalid_argument("type_vector: shape is not a product of three linear factors");
  const auto& tl = shape.three_linear();
  return {tl.alpha, tl.beta, tl.gamma};
}

// ---------------------------------------------------------------------------
// Sylvester resultant (fraction-free Bareiss elimination)

Int sylvester_resultant(const std::vector<Int>& f, const std::vector<Int>& g) {
  const long m = static_cast<long>(f.size()) - 1;
  const long n = static_cast<long>(g.size()) - 1;
  if (m < 1 || n < 1 || f.back() == 0 || g.back() == 0)
    throw std::invalid_argument("sylvester_resultant: need nonconstant polys with nonzero lead");

  const long N = m + n;
  std::vector<std::vector<Int>> M(N, std::vector<Int>(N, Int(0)));
  // n rows of f's coefficients (descending), shifted; then m rows of g's.
  for (long i = 0; i < n; ++i)
    for (long j = 0; j <= m; ++j) M[i][i + j] = f[m - j];
  for (long i = 0; i < m; ++i)
    for (long j = 0; j <= n; ++j) M[n + i][i + j] = g[n - j];

  int sign = 1;
  Int prev = 1;
  for (long k = 0; k + 1 < N; ++k) {
    if (M[k][k] == 0) {
      long piv = -1;
      for (long i = k + 1; i < N; ++i)
        if (M[i][k] != 0) {
          piv = i;
          break;
        }
      if (piv < 0) return 0;
      std::swap(M[k], M[piv]);
      sign = -sign;
    }
    for (long i = k + 1; i < N; ++i) {
      for (long j = k + 1; j < N; ++j) {
        M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;  // exact
      }
      M[i][k] = 0;
    }
    prev = M[k][k];
  }
  return sign > 0 ? M[N - 1][N - 1] : -M[N - 1][N - 1];
}

// ---------------------------------------------------------------------------
// Profile

Profile make_profile(const WeilCoeffs& w) {
  if (!is_weil_root_locus(w))
    throw std::invalid_argument("make_profile: (s,t,u) = (" + w.s.get_str() + "," +
                                w.t.get_str() + "," + w.u.get_str() + ") over q = " +
                                w.field.q.get_str() + " is not a Weil polynomial");
  Profile pr;
  pr.coeffs = w;
  pr.real = real_weil(w);
  pr.shape = factor_shape(pr.real, w.field);
  pr.slopes = newton_polygon(w);
  pr.p_rank = p_rank_of(pr.slopes);
  pr.ordinary = pr.p_rank == 3;
  pr.splits_further = splits_over_integers_further(pr.shape, w.field);
  return pr;
}

}  // namespace weil3
