#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "helpers.hpp"
#include "weil3/core.hpp"

using namespace weil3;
using namespace weil3::testing;

// ===========================================================================
// Independent in-test oracles.  These deliberately re-derive everything from
// first principles (Sturm sequences over Q, Newton's identities on elementary
// symmetric functions, 512-bit floating point) rather than reusing library
// formulas, so that implementation and oracle can only agree by being right.
// ===========================================================================

namespace {

using QPoly = std::vector<mpq_class>;  // ascending, may have leading zeros trimmed on use

int qsgn(const mpq_class& x) { return sgn(x); }

QPoly trim(QPoly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

mpq_class qeval(const QPoly& p, const mpq_class& x) {
  mpq_class acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// -p mod d (polynomial remainder), both nonzero, deg p >= deg d.
QPoly neg_rem(QPoly p, const QPoly& d) {
  while (p.size() >= d.size() && !p.empty()) {
    mpq_class f = p.back() / d.back();
    size_t off = p.size() - d.size();
    for (size_t i = 0; i < d.size(); ++i) p[off + i] -= f * d[i];
    p = trim(std::move(p));
    if (p.empty()) break;
  }
  for (auto& c : p) c = -c;
  return p;
}

std::vector<QPoly> sturm_chain(const QPoly& g) {
  std::vector<QPoly> chain;
  chain.push_back(trim(g));
  QPoly d;
  for (size_t i = 1; i < chain[0].size(); ++i) d.push_back(mpq_class(i) * chain[0][i]);
  chain.push_back(trim(d));
  while (chain.back().size() >= 1 && chain[chain.size() - 2].size() >= 2) {
    QPoly r = neg_rem(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    chain.push_back(r);
  }
  return chain;
}

int sign_changes_at(const std::vector<QPoly>& chain, const mpq_class& x) {
  int changes = 0, prev = 0;
  for (const auto& p : chain) {
    int s = qsgn(qeval(p, x));
    if (s != 0 && prev != 0 && s != prev) ++changes;
    if (s != 0) prev = s;
  }
  return changes;
}

int sign_changes_at_inf(const std::vector<QPoly>& chain, int dir) {  // dir = +1 / -1
  int changes = 0, prev = 0;
  for (const auto& p : chain) {
    if (p.empty()) continue;
    int s = qsgn(p.back());
    if (dir < 0 && (p.size() - 1) % 2 == 1) s = -s;
    if (s != 0 && prev != 0 && s != prev) ++changes;
    if (s != 0) prev = s;
  }
  return changes;
}

// Number of distinct real roots of g in (a, +infinity); requires g(a) != 0.
int distinct_roots_above(const QPoly& g, const mpq_class& a) {
  auto chain = sturm_chain(g);
  return sign_changes_at(chain, a) - sign_changes_at_inf(chain, +1);
}

int distinct_real_roots(const QPoly& g) {
  auto chain = sturm_chain(g);
  return sign_changes_at_inf(chain, -1) - sign_changes_at_inf(chain, +1);
}

// deg gcd(g, g') read off the Sturm chain (last element, when the chain
// terminated early, is an associate of the gcd).
int gcd_degree(const QPoly& g) {
  auto chain = sturm_chain(g);
  const QPoly& last = chain.back();
  // Chain ran to a nonzero constant <=> squarefree.
  if (last.size() <= 1) return 0;
  return static_cast<int>(last.size()) - 1;
}

// Oracle for the root-locus predicate, independent of QuadExt arithmetic:
// the monic cubic y^3+ay^2+by+c has all roots real (with multiplicity) and
// within [-2 sqrt(q), 2 sqrt(q)]  <=>  (i) all roots real, decided by Sturm
// distinct-count == 3 - deg gcd(g,g'), and (ii) the cubic G whose roots are
// the y_i^2, namely G(z) = z^3 - (a^2-2b) z^2 + (b^2-2ac) z - c^2, has no
// root in (4q, infinity), decided by Sturm after deflating any root at 4q.
bool locus_oracle(const Int& a, const Int& b, const Int& c, const Int& q) {
  QPoly g = {mpq_class(c), mpq_class(b), mpq_class(a), 1};
  if (distinct_real_roots(g) != 3 - gcd_degree(g)) return false;

  QPoly G = {mpq_class(-c * c), mpq_class(b * b - 2 * a * c), mpq_class(-(a * a - 2 * b)), 1};
  mpq_class z0(4 * q);
  while (!G.empty() && qeval(G, z0) == 0) {
    // synthetic division by (z - z0)
    QPoly quo(G.size() - 1);
    mpq_class carry = 0;
    for (size_t i = G.size(); i-- > 1;) {
      carry = G[i] + carry * z0;
      quo[i - 1] = carry;
    }
    G = trim(std::move(quo));
  }
  if (G.size() <= 1) return true;
  return distinct_roots_above(G, z0) == 0;
}

bool locus_oracle(const WeilCoeffs& w) {
  RealCubic g = real_weil(w);
  return locus_oracle(g.a, g.b, g.c, w.field.q);
}

// Power sums via Newton's identities on the elementary symmetric functions
// e = (s, t, u, qt, q^2 s, q^3) -- a derivation separate from the closed
// forms in the library.  (s is the first elementary symmetric value, so the
// underlying root system is the sign-flip of the roots of f; even-index power
// sums agree with f's and the point-count formulas are stated in this basis.)
Int newton_power_sum(const WeilCoeffs& w, unsigned long n) {
  const Int& q = w.field.q;
  std::array<Int, 7> e = {1, w.s, w.t, w.u, q * w.t, q * q * w.s, q * q * q};
  std::vector<Int> p(n + 1);
  for (unsigned long k = 1; k <= n; ++k) {
    Int acc = 0;
    for (unsigned long i = 1; i < k && i <= 6; ++i) {
      Int term = e[i] * p[k - i];
      acc += (i % 2 == 1) ? term : -term;
    }
    if (k <= 6) acc += (k % 2 == 1 ? Int(k) : Int(-static_cast<long>(k))) * e[k];
    p[k] = acc;
  }
  return p[n];
}

}  // namespace

// ===========================================================================
// FieldParams
// ===========================================================================

TEST_CASE("field params factor prime powers") {
  auto f = FieldParams::from_q(1024);
  CHECK(f.p == 2);
  CHECK(f.r == 10);
  CHECK(f.q == 1024);
  CHECK(f.q_is_square());
  CHECK(f.sqrt_q() == 32);

  auto f9 = FieldParams::from_q(9);
  CHECK(f9.p == 3);
  CHECK(f9.sqrt_q() == 3);

  CHECK(FieldParams::from_q(23).q_is_prime());
  CHECK_FALSE(FieldParams::from_q(8).q_is_square());
  CHECK_THROWS_AS(FieldParams::from_q(12), std::invalid_argument);
  CHECK_THROWS_AS(FieldParams::from_q(1), std::invalid_argument);
  CHECK_THROWS_AS(FieldParams::make(6, 2), std::invalid_argument);
  CHECK_THROWS_AS(FieldParams::from_q(8).sqrt_q(), std::logic_error);
}

// ===========================================================================
// real_weil and the defining identity f(x) = x^3 g(x + q/x)
// ===========================================================================

TEST_CASE("real cubic coefficients: reference triples") {
  {
    auto f = FieldParams::from_q(23);
    RealCubic g = real_weil(WeilCoeffs{f, 2, 4, 92});
    CHECK(g.a == 2);
    CHECK(g.b == -65);
    CHECK(g.c == 0);
  }
  {
    auto f = FieldParams::from_q(25);
    RealCubic g = real_weil(WeilCoeffs{f, 5, -24, -245});
    CHECK(g.a == 5);
    CHECK(g.b == -99);
    CHECK(g.c == -495);
  }
}

TEST_CASE("real cubic satisfies f(x) = x^3 g(x + q/x) at sample points") {
  auto rng = make_rng(1);
  for (const auto& f : small_fields()) {
    for (int it = 0; it < 20; ++it) {
      WeilCoeffs w = rand_coeffs(rng, f);
      RealCubic g = real_weil(w);
      auto fc = weil_poly_coeffs(w);
      for (mpq_class x : {mpq_class(1), mpq_class(2), mpq_class(-3), mpq_class(7, 2)}) {
        mpq_class fx = 0;
        for (int i = 6; i >= 0; --i) fx = fx * x + mpq_class(fc[i]);
        mpq_class y = x + mpq_class(f.q) / x;
        mpq_class gy = ((y + mpq_class(g.a)) * y + mpq_class(g.b)) * y + mpq_class(g.c);
        CHECK(fx == x * x * x * gy);
      }
    }
  }
}

TEST_CASE("prefilter bounds") {
  auto f = FieldParams::from_q(4);
  CHECK(passes_prefilter(WeilCoeffs{f, 0, 0, 0}));
  CHECK_FALSE(passes_prefilter(WeilCoeffs{f, 13, 0, 0}));   // 169 > 144
  CHECK(passes_prefilter(WeilCoeffs{f, 12, 0, 0}));         // 144 = 144
  CHECK_FALSE(passes_prefilter(WeilCoeffs{f, 0, 99, 0}));   // 99 > 60
  CHECK_FALSE(passes_prefilter(WeilCoeffs{f, 0, 0, 161}));  // 161^2 > 400*64
  CHECK(passes_prefilter(WeilCoeffs{f, 0, 0, 160}));
}

// ===========================================================================
// QuadExt sign
// ===========================================================================

TEST_CASE("quadext sign agrees with 512-bit floating point") {
  auto rng = make_rng(2);
  for (const auto& f : small_fields()) {
    mpf_class sq(0, 512);
    mpf_sqrt(sq.get_mpf_t(), mpf_class(f.q, 512).get_mpf_t());
    for (int it = 0; it < 400; ++it) {
      QuadExt v{Int(rand_long(rng, -1000, 1000)), Int(rand_long(rng, -1000, 1000))};
      mpf_class approx = mpf_class(v.rat, 512) + mpf_class(v.irr, 512) * sq;
      int expect;
      mpf_class mag = abs(approx);
      if (mag < mpf_class(1e-30, 512)) {
        // Exactly zero (integer combinations can't be this small otherwise).
        expect = 0;
      } else {
        expect = sgn(approx);
      }
      CAPTURE(f.q.get_si());
      CAPTURE(v.rat.get_si());
      CAPTURE(v.irr.get_si());
      CHECK(quadext_sign(v, f.q) == expect);
    }
    // Exact-zero cases: rat = -irr*sqrt(q) only representable when q is square.
    if (f.q_is_square()) {
      Int m = f.sqrt_q();
      CHECK(quadext_sign(QuadExt{3 * m, -3}, f.q) == 0);
      CHECK(quadext_sign(QuadExt{-5 * m, 5}, f.q) == 0);
    }
  }
}

// ===========================================================================
// Root locus
// ===========================================================================

TEST_CASE("root locus: constructed real spectra with known roots") {
  for (const auto& f : small_fields()) {
    Int m2 = 4 * f.q;  // roots y are admissible iff y^2 <= 4q
    long reach = static_cast<long>(isqrt(m2).get_si()) + 3;
    for (long y1 = -reach; y1 <= reach; ++y1)
      for (long y2 = y1; y2 <= reach; ++y2)
        for (long y3 = y2; y3 <= reach; y3 += 2) {
          WeilCoeffs w = coeffs_from_real_roots(f, y1, y2, y3);
          bool expect = Int(y1) * y1 <= m2 && Int(y2) * y2 <= m2 && Int(y3) * y3 <= m2;
          CAPTURE(f.q.get_si());
          CAPTURE(y1);
          CAPTURE(y2);
          CAPTURE(y3);
          CHECK(is_weil_root_locus(w) == expect);
        }
  }
}

TEST_CASE("root locus agrees with Sturm-sequence oracle on random triples") {
  auto rng = make_rng(3);
  long trues = 0, total = 0;
  auto compare = [&](const WeilCoeffs& w) {
    bool got = is_weil_root_locus(w);
    bool expect = locus_oracle(w);
    trues += expect;
    ++total;
    CAPTURE(w.field.q.get_si());
    CAPTURE(w.s.get_si());
    CAPTURE(w.t.get_si());
    CAPTURE(w.u.get_si());
    REQUIRE(got == expect);
  };
  for (const auto& f : small_fields()) {
    // Uniform over the prefilter box (mostly off-locus)...
    for (int it = 0; it < 2500; ++it) compare(rand_coeffs(rng, f));
    // ...plus perturbations of real spectra straddling the boundary.
    long reach = static_cast<long>(isqrt(4 * f.q).get_si()) + 1;
    for (int it = 0; it < 1500; ++it) {
      WeilCoeffs w = coeffs_from_real_roots(f, Int(rand_long(rng, -reach, reach)),
                                            Int(rand_long(rng, -reach, reach)),
                                            Int(rand_long(rng, -reach, reach)));
      w.u += rand_long(rng, -3, 3);
      compare(w);
    }
  }
  CHECK(trues > 2000);  // the comparison must not be vacuous
}

TEST_CASE("root locus: reference members and non-members") {
  CHECK(is_weil_root_locus(WeilCoeffs{FieldParams::from_q(2), 0, 0, 2}));
  CHECK(is_weil_root_locus(WeilCoeffs{FieldParams::from_q(23), 2, 4, 92}));
  CHECK(is_weil_root_locus(WeilCoeffs{FieldParams::from_q(25), 5, -24, -245}));
  CHECK(is_weil_root_locus(WeilCoeffs{FieldParams::from_q(2), 0, 0, 0}));
  // Outside the prefilter box entirely.
  CHECK_FALSE(is_weil_root_locus(WeilCoeffs{FieldParams::from_q(4), 0, 99, 0}));
  // Inside the box but with a real root off the interval: g has root sum 0
  // and a root beyond 2 sqrt(2).
  CHECK_FALSE(is_weil_root_locus(coeffs_from_real_roots(FieldParams::from_q(2), -4, 1, 3)));
  // Complex roots of g: y^3 + y + 1 has only one real root.
  {
    auto f = FieldParams::from_q(5);
    WeilCoeffs w{f, 0, 3 * f.q + 1, 1};  // (a,b,c) = (0,1,1)
    CHECK_FALSE(is_weil_root_locus(w));
  }
}

// ===========================================================================
// Power sums / point counts
// ===========================================================================

TEST_CASE("power sums match Newton-identity evaluation") {
  auto rng = make_rng(4);
  for (const auto& f : small_fields()) {
    for (int it = 0; it < 60; ++it) {
      WeilCoeffs w = rand_coeffs(rng, f);
      for (unsigned long n = 1; n <= 12; ++n) {
        CAPTURE(n);
        REQUIRE(power_sum(w, n) == newton_power_sum(w, n));
      }
    }
  }
}

TEST_CASE("power sums: closed-form spot values") {
  // s = t = u = 0 gives f = x^6 + q^3, whose sixth powers sum to -6 q^3.
  for (const auto& f : small_fields()) {
    WeilCoeffs w{f, 0, 0, 0};
    CHECK(power_sum(w, 1) == 0);
    CHECK(power_sum(w, 2) == 0);
    CHECK(power_sum(w, 3) == 0);
    CHECK(power_sum(w, 4) == 0);
    CHECK(power_sum(w, 5) == 0);
    CHECK(power_sum(w, 6) == -6 * f.q * f.q * f.q);
    // p_12 = -q^3 p_6 by the recurrence: each root satisfies alpha^6 = -q^3.
    CHECK(power_sum(w, 12) == 6 * pow_int(f.q, 6));
  }
}

TEST_CASE("curve point counts: q=2, (s,t,u)=(0,0,2)") {
  // Counts of a known genus-3 curve over F_2, F_4, F_8 (computed by direct
  // point enumeration of y^2 + y = x^7): 3, 5, 3.
  WeilCoeffs w{FieldParams::from_q(2), 0, 0, 2};
  CHECK(curve_point_count(w, 1) == 3);
  CHECK(curve_point_count(w, 2) == 5);
  CHECK(curve_point_count(w, 3) == 3);
}

// ===========================================================================
// Newton polygon
// ===========================================================================

TEST_CASE("newton polygon: frozen shapes") {
  {
    // q=2, (0,0,2): slopes {1/3 x3, 2/3 x3}, p-rank 0.
    auto sl = newton_polygon(WeilCoeffs{FieldParams::from_q(2), 0, 0, 2});
    REQUIRE(sl.size() == 6);
    CHECK(sl == std::vector<Slope>{{1, 3}, {1, 3}, {1, 3}, {2, 3}, {2, 3}, {2, 3}});
    CHECK(p_rank_of(sl) == 0);
  }
  {
    // q=2, (0,0,0): supersingular, all slopes 1/2.
    auto sl = newton_polygon(WeilCoeffs{FieldParams::from_q(2), 0, 0, 0});
    CHECK(sl == std::vector<Slope>(6, Slope{1, 2}));
    CHECK(p_rank_of(sl) == 0);
  }
  {
    // q=2, (0,1,1): ordinary, slopes {0 x3, 1 x3}.
    auto sl = newton_polygon(WeilCoeffs{FieldParams::from_q(2), 0, 1, 1});
    CHECK(sl == std::vector<Slope>{{0, 1}, {0, 1}, {0, 1}, {1, 1}, {1, 1}, {1, 1}});
    CHECK(p_rank_of(sl) == 3);
  }
  {
    // q=4 = 2^2, (1,2,2): v_2 of coefficients (64,16,8,2,2,1,1) = (6,4,3,1,1,0,0);
    // lower hull (0,6),(1,4),(3,1),(5,0),(6,0), normalized by r=2:
    // slopes {1, 3/4 x2, 1/4 x2, 0}.
    auto sl = newton_polygon(WeilCoeffs{FieldParams::from_q(4), 1, 2, 2});
    REQUIRE(sl.size() == 6);
    CHECK(sl == std::vector<Slope>{{0, 1}, {1, 4}, {1, 4}, {3, 4}, {3, 4}, {1, 1}});
    CHECK(p_rank_of(sl) == 1);
  }
}

TEST_CASE("newton polygon properties on random triples") {
  auto rng = make_rng(5);
  for (const auto& f : small_fields()) {
    for (int it = 0; it < 200; ++it) {
      WeilCoeffs w = rand_coeffs(rng, f);
      auto sl = newton_polygon(w);
      REQUIRE(sl.size() == 6);
      CHECK(std::is_sorted(sl.begin(), sl.end()));
      // Slopes lie in [0,1] and are symmetric under s -> 1-s.
      std::multiset<std::pair<int, int>> direct, mirrored;
      for (const auto& s : sl) {
        CHECK(s.num >= 0);
        CHECK(s.num <= s.den);
        direct.insert({s.num, s.den});
        Slope m{s.den - s.num, s.den};
        int g = std::gcd(m.num, m.den);
        mirrored.insert({m.num / g, m.den / g});
      }
      CHECK(direct == mirrored);
      // p-rank equals 6 minus the first coefficient index that is a p-unit.
      auto fc = weil_poly_coeffs(w);
      int k = 6;
      for (int i = 0; i <= 6; ++i) {
        if (fc[i] % f.p != 0) {
          k = i;
          break;
        }
      }
      CHECK(p_rank_of(sl) == 6 - k);
      // Ordinary <=> p does not divide u.
      CHECK((p_rank_of(sl) == 3) == is_ordinary(w));
    }
  }
}

// ===========================================================================
// Factor shape
// ===========================================================================

TEST_CASE("factor shape: three linear factors round-trip") {
  auto rng = make_rng(6);
  for (const auto& f : small_fields()) {
    long reach = static_cast<long>(isqrt(4 * f.q).get_si());
    for (int it = 0; it < 120; ++it) {
      std::array<Int, 3> alphas = {Int(rand_long(rng, -reach, reach)),
                                   Int(rand_long(rng, -reach, reach)),
                                   Int(rand_long(rng, -reach, reach))};
      std::sort(alphas.begin(), alphas.end());
      // g = (y+a1)(y+a2)(y+a3), i.e. roots -a_i (all within the root bound).
      WeilCoeffs w = coeffs_from_real_roots(f, -alphas[0], -alphas[1], -alphas[2]);
      FactorShape sh = factor_shape(real_weil(w), f);
      REQUIRE(sh.is_three_linear());
      CHECK(type_vector(sh) == alphas);
      CHECK(sh.factor_count() == 3);
    }
  }
}

TEST_CASE("factor shape: linear times irreducible quadratic") {
  auto f = FieldParams::from_q(11);
  // g = (y+2)(y^2+y+3): disc of quadratic = -11 < 0.
  RealCubic g{Int(3), Int(5), Int(6)};
  // expand: y^3 + (2+1) y^2 + (2*1+3) y + 2*3 = y^3+3y^2+5y+6, root -2.
  FactorShape sh = factor_shape(g, f);
  REQUIRE(sh.v.index() == 1);
  const auto& lq = sh.linear_quadratic();
  CHECK(lq.alpha == 2);
  CHECK(lq.delta == 1);
  CHECK(lq.eps == 3);
  CHECK(sh.factor_count() == 2);
  CHECK_THROWS_AS(type_vector(sh), std::invalid_argument);

  // Positive non-square discriminant is still irreducible over Z:
  // g = (y-1)(y^2 - y - 1), quadratic disc 5.
  FactorShape sh2 = factor_shape(RealCubic{Int(-2), Int(0), Int(1)}, f);
  REQUIRE(sh2.v.index() == 1);
  CHECK(sh2.linear_quadratic().alpha == -1);
}

TEST_CASE("factor shape: irreducible cubic and c = 0 special case") {
  auto f = FieldParams::from_q(7);
  // y^3 - y - 1 has no rational root.
  CHECK(factor_shape(RealCubic{Int(0), Int(-1), Int(-1)}, f).v.index() == 2);
  CHECK(factor_shape(RealCubic{Int(0), Int(-1), Int(-1)}, f).factor_count() == 1);
  // c = 0: root 0 plus quadratic y^2 - 4 = (y-2)(y+2).
  FactorShape sh = factor_shape(RealCubic{Int(0), Int(-4), Int(0)}, f);
  REQUIRE(sh.is_three_linear());
  CHECK(type_vector(sh) == std::array<Int, 3>{-2, 0, 2});
  // c = 0 with irreducible quadratic y^2 + 2.
  FactorShape sh2 = factor_shape(RealCubic{Int(0), Int(2), Int(0)}, f);
  REQUIRE(sh2.v.index() == 1);
  CHECK(sh2.linear_quadratic().alpha == 0);
}

TEST_CASE("factor shape: repeated roots stay ThreeLinear") {
  auto f = FieldParams::from_q(13);
  WeilCoeffs w = coeffs_from_real_roots(f, 2, 2, -5);
  FactorShape sh = factor_shape(real_weil(w), f);
  REQUIRE(sh.is_three_linear());
  CHECK(type_vector(sh) == std::array<Int, 3>{-2, -2, 5});
}

TEST_CASE("splits_over_integers_further flags alpha^2 = 4q") {
  auto f4 = FieldParams::from_q(4);
  WeilCoeffs w = coeffs_from_real_roots(f4, 4, 0, 0);  // root 4 = 2 sqrt(q)
  FactorShape sh = factor_shape(real_weil(w), f4);
  CHECK(splits_over_integers_further(sh, f4));
  auto f2 = FieldParams::from_q(2);
  WeilCoeffs w2 = coeffs_from_real_roots(f2, 2, 0, 0);
  CHECK_FALSE(splits_over_integers_further(factor_shape(real_weil(w2), f2), f2));
}

// ===========================================================================
// Sylvester resultant
// ===========================================================================

TEST_CASE("sylvester resultant matches closed forms") {
  auto rng = make_rng(7);
  for (int it = 0; it < 3000; ++it) {
    Int alpha(rand_long(rng, -50, 50));
    Int delta(rand_long(rng, -50, 50));
    Int eps(rand_long(rng, -50, 50));
    // res(x + alpha, x^2 + delta x + eps) = alpha^2 - alpha delta + eps
    CHECK(sylvester_resultant({alpha, 1}, {eps, delta, 1}) ==
          alpha * alpha - alpha * delta + eps);
    // res(x + alpha, x + beta) = beta - alpha
    Int beta(rand_long(rng, -50, 50));
    CHECK(sylvester_resultant({alpha, 1}, {beta, 1}) == beta - alpha);
  }
}

TEST_CASE("sylvester resultant: product over root differences") {
  auto rng = make_rng(8);
  for (int it = 0; it < 500; ++it) {
    Int a(rand_long(rng, -20, 20)), b(rand_long(rng, -20, 20));
    Int c(rand_long(rng, -20, 20)), d(rand_long(rng, -20, 20));
    // f = (x+a)(x+b), g = (x+c)(x+d); res(f,g) = prod g(-root of f)
    std::vector<Int> f = {a * b, a + b, 1};
    std::vector<Int> g = {c * d, c + d, 1};
    Int expect = (c - a) * (d - a) * (c - b) * (d - b);
    CHECK(sylvester_resultant(f, g) == expect);
  }
  // Shared root => 0.
  CHECK(sylvester_resultant({Int(2), Int(3), Int(1)}, {Int(-2), Int(1), Int(1)}) == 0);
}

TEST_CASE("sylvester resultant: sparse polynomials (pivot-swap path)") {
  // res(x^3-2, x^2-3): the roots b = +-sqrt(3) give prod (b^3-2) = (3 sqrt(3)
  // - 2)(-3 sqrt(3) - 2) = 4 - 27 = -23; swapping arguments multiplies by
  // (-1)^{3*2} = +1.
  Int r1 = sylvester_resultant({Int(-2), Int(0), Int(0), Int(1)}, {Int(-3), Int(0), Int(1)});
  Int r2 = sylvester_resultant({Int(-3), Int(0), Int(1)}, {Int(-2), Int(0), Int(0), Int(1)});
  CHECK(abs(r1) == 23);
  CHECK(r1 == r2);
}

// ===========================================================================
// Profile
// ===========================================================================

TEST_CASE("make_profile assembles consistent data and rejects non-members") {
  auto w = WeilCoeffs{FieldParams::from_q(2), 0, 0, 2};
  Profile pr = make_profile(w);
  CHECK(pr.p_rank == 0);
  CHECK_FALSE(pr.ordinary);
  CHECK(pr.shape.factor_count() == 1);  // y^3 - 6y + 2 is Eisenstein at 2
  CHECK_FALSE(pr.splits_further);

  CHECK_THROWS_AS(make_profile(WeilCoeffs{FieldParams::from_q(4), 0, 99, 0}),
                  std::invalid_argument);
}
