#pragma once

// Core types and exact predicates for degree-6 Weil polynomials
//
//   f(x) = x^6 + s x^5 + t x^4 + u x^3 + q t x^2 + q^2 s x + q^3,   q = p^r,
//
// together with the associated real cubic
//
//   g(y) = y^3 + a y^2 + b y + c,   (a, b, c) = (s, t - 3q, u - 2qs),
//
// satisfying f(x) = x^3 g(x + q/x).  All arithmetic is exact; square roots of
// non-square q are handled symbolically through QuadExt values x + y*sqrt(q).

#include <array>
#include <compare>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "weil3/arith.hpp"

namespace weil3 {

// ---------------------------------------------------------------------------
// Base field F_q, q = p^r.

struct FieldParams {
  long p = 0;
  long r = 0;
  Int q;

  static FieldParams make(long p, long r);      // validates p prime, r >= 1
  static FieldParams from_q(const Int& q);      // factors q; throws if not a prime power

  bool q_is_square() const { return r % 2 == 0; }
  // sqrt(q) = p^(r/2); requires q_is_square().
  Int sqrt_q() const;
  // q^n for small n >= 0.
  Int q_pow(unsigned long n) const { return pow_int(q, n); }
  bool q_is_prime() const { return r == 1; }

  friend bool operator==(const FieldParams&, const FieldParams&) = default;
};

// ---------------------------------------------------------------------------
// Coefficient data.

struct WeilCoeffs {
  FieldParams field;
  Int s, t, u;
};

struct RealCubic {
  Int a, b, c;
  Int discriminant() const {
    return 18 * a * b * c - 4 * a * a * a * c + a * a * b * b - 4 * b * b * b -
           27 * c * c;
  }
  Int eval(const Int& y) const { return ((y + a) * y + b) * y + c; }
};

// (a,b,c) = (s, t-3q, u-2qs).
RealCubic real_weil(const WeilCoeffs& w);

// Coefficients of f in ascending degree order: [q^3, q^2 s, q t, u, t, s, 1].
std::array<Int, 7> weil_poly_coeffs(const WeilCoeffs& w);

// Coarse coefficient bounds implied by the root locus:
// s^2 <= 36q, |t| <= 15q, u^2 <= 400 q^3.
bool passes_prefilter(const WeilCoeffs& w);

// ---------------------------------------------------------------------------
// Exact values in Z + Z*sqrt(q).

struct QuadExt {
  Int rat, irr;  // value = rat + irr * sqrt(q)
};

// Sign of v given the ambient q > 0 (exact; no floating point).
int quadext_sign(const QuadExt& v, const Int& q);

// g and g' evaluated at +/- 2 sqrt(q), as QuadExt values.
QuadExt cubic_at_2sqrtq(const RealCubic& g, const Int& q, int side);    // side = +1 / -1
QuadExt cubic_deriv_at_2sqrtq(const RealCubic& g, const Int& q, int side);

// True iff every complex root of f has modulus exactly sqrt(q), i.e. the real
// cubic has three real roots (with multiplicity) in [-2 sqrt(q), 2 sqrt(q)].
bool is_weil_root_locus(const WeilCoeffs& w);

// ---------------------------------------------------------------------------
// Power sums and point counts.

// p_n = sum of n-th powers of the six roots of f; n >= 1.
// Closed forms for n <= 6, linear recurrence above.
Int power_sum(const WeilCoeffs& w, unsigned long n);

// #C(F_{q^n}) = 1 + q^n - p_n for a genus-3 curve C with L-polynomial data w.
// May be negative for non-realizable classes.
Int curve_point_count(const WeilCoeffs& w, unsigned long n);

// ---------------------------------------------------------------------------
// Newton polygon.

// Normalized slope in [0,1], a reduced fraction num/den.
struct Slope {
  int num = 0;
  int den = 1;
  friend bool operator==(const Slope&, const Slope&) = default;
  friend std::strong_ordering operator<=>(const Slope& x, const Slope& y) {
    return static_cast<long>(x.num) * y.den <=> static_cast<long>(y.num) * x.den;
  }
};

std::string to_string(const Slope& s);

// Slopes (with multiplicity, ascending) of the p-adic Newton polygon of a
// polynomial with the given ascending coefficients, normalized by 1/r so that
// slopes land in [0,1] for Weil polynomials over F_{p^r}.
// Zero coefficients are treated as +infinity valuation.  Leading and constant
// coefficients must be nonzero.
std::vector<Slope> newton_slopes(const std::vector<Int>& coeffs, long p, long r);

// Slopes of f itself (six of them).
std::vector<Slope> newton_polygon(const WeilCoeffs& w);

// Multiplicity of slope 0 (= p-rank of the isogeny class).
int p_rank_of(const std::vector<Slope>& slopes);

// Ordinary <=> p_rank = genus <=> p does not divide u.
bool is_ordinary(const WeilCoeffs& w);

// ---------------------------------------------------------------------------
// Factorization shape of the real cubic over Z.
//
// Stored values follow the monic-factor convention g = prod (y + alpha_i):
// an entry alpha corresponds to the root -alpha.

struct ThreeLinear {
  Int alpha, beta, gamma;  // alpha <= beta <= gamma
};
struct LinearQuadratic {
  Int alpha;       // linear factor y + alpha
  Int delta, eps;  // y^2 + delta y + eps, irreducible over Z
};
struct IrreducibleCubic {};

struct FactorShape {
  std::variant<ThreeLinear, LinearQuadratic, IrreducibleCubic> v;

  // 3 / 2 / 1 by shape (counts multiplicity: a repeated linear factor still
  // contributes ThreeLinear).
  int factor_count() const { return 3 - static_cast<int>(v.index()); }
  bool is_three_linear() const { return v.index() == 0; }
  const ThreeLinear& three_linear() const { return std::get<ThreeLinear>(v); }
  const LinearQuadratic& linear_quadratic() const { return std::get<LinearQuadratic>(v); }
};

// Exact factorization of g over Z (integer roots via divisor scan of c).
FactorShape factor_shape(const RealCubic& g, const FieldParams& field);

// True iff some linear entry alpha of the shape satisfies alpha^2 = 4q, i.e.
// the corresponding quadratic factor x^2 + alpha x + q of f splits over Z.
bool splits_over_integers_further(const FactorShape& shape, const FieldParams& field);

// [alpha, beta, gamma] for a ThreeLinear shape; throws std::invalid_argument
// otherwise.
std::array<Int, 3> type_vector(const FactorShape& shape);

// ---------------------------------------------------------------------------
// Resultants.

// Exact resultant of two nonconstant integer polynomials (ascending
// coefficients, nonzero leading terms) via fraction-free elimination of the
// Sylvester matrix.
Int sylvester_resultant(const std::vector<Int>& f, const std::vector<Int>& g);

// ---------------------------------------------------------------------------
// Full derived profile of one isogeny class.

struct Profile {
  WeilCoeffs coeffs;
  RealCubic real;
  FactorShape shape;
  std::vector<Slope> slopes;  // six, ascending
  int p_rank = 0;
  bool ordinary = false;
  bool splits_further = false;
};

// Throws std::invalid_argument if w fails the root-locus test.
Profile make_profile(const WeilCoeffs& w);

}  // namespace weil3
