#include "weil3/rules.hpp"

#include <algorithm>

namespace weil3 {

std::string to_string(ParityGate g) {
  switch (g) {
    case ParityGate::odd:
      return "O";
    case ParityGate::even:
      return "E";
    default:
      return "O,E";
  }
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::proved:
      return "proved";
    case Provenance::partial:
      return "partial";
    default:
      return "observed";
  }
}

namespace {

using Pred = std::function<bool(const Profile&, const RuleOptions&)>;

const ThreeLinear& tl(const Profile& pr) { return pr.shape.three_linear(); }
const LinearQuadratic& lq(const Profile& pr) { return pr.shape.linear_quadratic(); }

// "p * v_p(q)" constant.  Literal reading: p times r.  Alternative reading:
// 2 sqrt(q), which only denotes an integer when q is square; comparing an
// integer against the irrational value makes equality false (and inequality
// true), encoded here by nullopt.
std::optional<Int> pvq_const(const FieldParams& f, const RuleOptions& opt) {
  if (opt.pvq == RuleOptions::Pvq::p_times_r) return Int(f.p * f.r);
  if (f.q_is_square()) return 2 * f.sqrt_q();
  return std::nullopt;
}

bool eq_pvq(const Int& x, const FieldParams& f, const RuleOptions& opt, int sign = +1) {
  auto v = pvq_const(f, opt);
  return v.has_value() && x == sign * *v;
}

// --- point-count obstruction -----------------------------------------------

bool illegal_point_counts(const Profile& pr) {
  const WeilCoeffs& w = pr.coeffs;
  const Int& q = w.field.q;
  // (i) negative predicted count over the base field (only possible at n = 1)
  if (curve_point_count(w, 1) < 0) return true;
  // (ii) count must not drop under field extension; violations need q^n <= 8
  for (unsigned long n = 1; pow_int(q, n) <= 8; ++n) {
    Int base = curve_point_count(w, n);
    for (unsigned long m = 2; m <= 6; ++m) {
      if (curve_point_count(w, m * n) < base) return true;
    }
  }
  // (iii) double-cover bound #C <= 2(q^n+1), binding for n=1, q<=32 and
  // n=2, q<=5
  if (q <= 32 && curve_point_count(w, 1) > 2 * (q + 1)) return true;
  if (q <= 5 && curve_point_count(w, 2) > 2 * (q * q + 1)) return true;
  return false;
}

// --- resultant-1 obstruction -----------------------------------------------

bool resultant_one(const Profile& pr) {
  if (pr.shape.is_three_linear()) {
    const auto& v = tl(pr);
    // Splittings (x+a) | (x+b)(x+c): resultant values are products of
    // differences; computed via the Sylvester determinant.
    const std::array<std::array<Int, 3>, 3> splits = {{{v.alpha, v.beta, v.gamma},
                                                       {v.beta, v.alpha, v.gamma},
                                                       {v.gamma, v.alpha, v.beta}}};
    for (const auto& sp : splits) {
      std::vector<Int> h1 = {sp[0], 1};
      std::vector<Int> h2 = {sp[1] * sp[2], sp[1] + sp[2], 1};
      if (abs(sylvester_resultant(h1, h2)) == 1) return true;
    }
    return false;
  }
  if (pr.shape.v.index() == 1) {
    const auto& v = lq(pr);
    std::vector<Int> h1 = {v.alpha, 1};
    std::vector<Int> h2 = {v.eps, v.delta, 1};
    return abs(sylvester_resultant(h1, h2)) == 1;
  }
  return false;  // irreducible cubic: no splitting over Z
}

// --- type obstruction (q square) -------------------------------------------

// Ordinariness of a real Weil factor h0 (ascending coefficients, monic,
// degree 1 or 2) over F_Q: the induced Weil polynomial x^k h0(x + Q/x) must
// have p-rank equal to deg h0.
bool real_factor_ordinary(const std::vector<Int>& h0, const FieldParams& f) {
  std::vector<Int> induced;
  if (h0.size() == 2) {
    induced = {f.q, h0[0], 1};
  } else {
    // h0 = y^2 + delta y + eps, ascending [eps, delta, 1], induces
    // x^4 + delta x^3 + (eps + 2Q) x^2 + delta Q x + Q^2.
    induced = {f.q * f.q, h0[1] * f.q, h0[0] + 2 * f.q, h0[1], 1};
  }
  auto slopes = newton_slopes(induced, f.p, f.r);
  return p_rank_of(slopes) == static_cast<int>(h0.size()) - 1;
}

bool type_obstruction(const Profile& pr, const RuleOptions& opt) {
  const FieldParams& f = pr.coeffs.field;
  if (!f.q_is_square()) return false;
  Int q0 = f.sqrt_q();
  const RealCubic& g = pr.real;
  for (int sign : {+1, -1}) {
    Int v = sign * 2 * q0;
    // Extract the multiplicity of v as a root of g.
    std::vector<Int> h = {g.c, g.b, g.a, 1};
    int n = 0;
    while (h.size() > 1) {
      Int val = 0;
      for (auto it = h.rbegin(); it != h.rend(); ++it) val = val * v + *it;
      if (val != 0) break;
      std::vector<Int> quo(h.size() - 1);
      Int carry = 0;
      for (size_t i = h.size(); i-- > 1;) {
        carry = h[i] + carry * v;
        quo[i - 1] = carry;
      }
      h = std::move(quo);
      ++n;
    }
    if (n < 1 || h.size() <= 1) continue;  // no root, or h0 constant
    if (!real_factor_ordinary(h, f)) continue;
    Int eval_at = opt.type_eval == RuleOptions::TypeEval::split_root ? v : 2 * q0;
    Int val = 0;
    for (auto it = h.rbegin(); it != h.rend(); ++it) val = val * eval_at + *it;
    if (val != 0 && is_squarefree(val)) return true;
  }
  return false;
}

// --- discriminant obstruction ----------------------------------------------

bool discriminant_obstruction(const Profile& pr) {
  if (!pr.shape.is_three_linear()) return false;
  const auto& v = tl(pr);
  if (v.alpha != v.beta || v.beta != v.gamma) return false;
  Int d = v.alpha * v.alpha - 4 * pr.coeffs.field.q;
  static const long list[] = {0,   -3,  -4,  -7,  -8,  -11, -19, -20, -23, -27,
                              -35, -39, -43, -51, -59, -67, -75, -83, -91, -99};
  return std::find(std::begin(list), std::end(list), d) != std::end(list);
}

// --- small helpers ----------------------------------------------------------

bool q_prime(const Profile& pr) { return pr.coeffs.field.q_is_prime(); }
bool q_square(const Profile& pr) { return pr.coeffs.field.q_is_square(); }
Int qv(const Profile& pr) { return pr.coeffs.field.q; }

Rule make_rule(std::string id, ParityGate parity, std::optional<int> factors,
               std::vector<int> p_ranks, std::string other_gate, std::string condition,
               Provenance prov, Pred gate_pred, Pred cond_pred) {
  Rule r;
  r.id = std::move(id);
  r.parity = parity;
  r.factors = factors;
  r.p_ranks = std::move(p_ranks);
  r.other_gate = std::move(other_gate);
  r.condition = std::move(condition);
  r.provenance = prov;
  r.gate_pred = std::move(gate_pred);
  r.cond_pred = std::move(cond_pred);
  return r;
}

Pred no_gate() {
  return [](const Profile&, const RuleOptions&) { return true; };
}

std::vector<Rule> build_rules() {
  std::vector<Rule> rules;
  auto add = [&rules](auto&&... args) {
    rules.push_back(make_rule(std::forward<decltype(args)>(args)...));
  };

  // ---- even characteristic ----

  add("0.N.N.0", ParityGate::even, std::nullopt, std::vector<int>{}, "",
      "(s,t,u) = (0,1,1), (1,0,1) or (1,1,0) mod 2", Provenance::partial, no_gate(),
      [](const Profile& pr, const RuleOptions&) {
        int s = static_cast<int>(mod_nonneg(pr.coeffs.s, 2).get_si());
        int t = static_cast<int>(mod_nonneg(pr.coeffs.t, 2).get_si());
        int u = static_cast<int>(mod_nonneg(pr.coeffs.u, 2).get_si());
        return (s == 0 && t == 1 && u == 1) || (s == 1 && t == 0 && u == 1) ||
               (s == 1 && t == 1 && u == 0);
      });

  add("0.N.0.0", ParityGate::even, std::nullopt, std::vector<int>{0}, "",
      "all Newton polygon slopes equal 1/2", Provenance::proved, no_gate(),
      [](const Profile& pr, const RuleOptions&) {
        return std::all_of(pr.slopes.begin(), pr.slopes.end(),
                           [](const Slope& s) { return s == Slope{1, 2}; });
      });

  add("0.2.2.0", ParityGate::even, 2, std::vector<int>{}, "", "alpha = 0 and eps = +-3",
      Provenance::observed, no_gate(), [](const Profile& pr, const RuleOptions&) {
        return lq(pr).alpha == 0 && abs(lq(pr).eps) == 3;
      });

  add("0.3.1.0", ParityGate::even, 3, std::vector<int>{1}, "q nonsquare",
      "gamma-alpha in {1, sqrt(pq)} or (beta-alpha, gamma-beta) in {(sqrt(pq),1), (1,sqrt(pq))}",
      Provenance::observed,
      [](const Profile& pr, const RuleOptions&) { return !q_square(pr); },
      [](const Profile& pr, const RuleOptions&) {
        const auto& v = tl(pr);
        const FieldParams& f = pr.coeffs.field;
        // q nonsquare => r odd => pq = p^(r+1) is a perfect square.
        Int spq = pow_int(Int(f.p), static_cast<unsigned long>((f.r + 1) / 2));
        Int ba = v.beta - v.alpha, gb = v.gamma - v.beta, ga = v.gamma - v.alpha;
        return ga == 1 || ga == spq || (ba == spq && gb == 1) || (ba == 1 && gb == spq);
      });

  add("0.3.2.0", ParityGate::even, 3, std::vector<int>{2}, "", "alpha + 5 > gamma",
      Provenance::observed, no_gate(), [](const Profile& pr, const RuleOptions&) {
        return tl(pr).alpha + 5 > tl(pr).gamma;
      });

  add("0.3.2.1", ParityGate::even, 3, std::vector<int>{2}, "",
      "alpha = -p*v_p(q) and beta < gamma < p*v_p(q) - 1", Provenance::observed, no_gate(),
      [](const Profile& pr, const RuleOptions& opt) {
        const auto& v = tl(pr);
        auto c = pvq_const(pr.coeffs.field, opt);
        return c.has_value() && v.alpha == -*c && v.beta < v.gamma && v.gamma < *c - 1;
      });

  add("0.3.2.2", ParityGate::even, 3, std::vector<int>{2}, "",
      "1 - p*v_p(q) < alpha < beta <= gamma = p*v_p(q)", Provenance::observed, no_gate(),
      [](const Profile& pr, const RuleOptions& opt) {
        const auto& v = tl(pr);
        auto c = pvq_const(pr.coeffs.field, opt);
        return c.has_value() && v.gamma == *c && 1 - *c < v.alpha && v.alpha < v.beta &&
               v.beta <= v.gamma;
      });

  // ---- odd characteristic ----

  add("1.N.N.0", ParityGate::odd, std::nullopt, std::vector<int>{}, "",
      "t even and u odd", Provenance::proved, no_gate(),
      [](const Profile& pr, const RuleOptions&) {
        return pr.coeffs.t % 2 == 0 && pr.coeffs.u % 2 != 0;
      });

  add("1.1.0.0", ParityGate::odd, 1, std::vector<int>{0},
      "p = q = 1 mod 3, Newton polygon first slope 1/3",
      "b > -q and b an even multiple of q", Provenance::observed,
      [](const Profile& pr, const RuleOptions&) {
        return q_prime(pr) && mod_nonneg(qv(pr), 3) == 1 &&
               pr.slopes.front() == Slope{1, 3};
      },
      [](const Profile& pr, const RuleOptions&) {
        return pr.real.b > -qv(pr) && mod_nonneg(pr.real.b, 2 * qv(pr)) == 0;
      });

  add("1.1.0.1", ParityGate::odd, 1, std::vector<int>{0}, "q = p^2",
      "(b = -3q and c an odd multiple of q) or (b in {-2q,-q} and |a| = 2p)",
      Provenance::observed,
      [](const Profile& pr, const RuleOptions&) { return pr.coeffs.field.r == 2; },
      [](const Profile& pr, const RuleOptions&) {
        const Int& q = qv(pr);
        const RealCubic& g = pr.real;
        bool first = g.b == -3 * q && g.c % q == 0 && (g.c / q) % 2 != 0;
        bool second = (g.b == -2 * q || g.b == -q) && abs(g.a) == 2 * pr.coeffs.field.p;
        return first || second;
      });

  add("1.2.1.0", ParityGate::odd, 2, std::vector<int>{1}, "q prime",
      "alpha odd and (delta, eps) = (0, 2-2q) mod 4", Provenance::observed,
      [](const Profile& pr, const RuleOptions&) { return q_prime(pr); },
      [](const Profile& pr, const RuleOptions&) {
        const auto& v = lq(pr);
        return v.alpha % 2 != 0 && mod_nonneg(v.delta, 4) == 0 &&
               mod_nonneg(v.eps, 4) == mod_nonneg(2 - 2 * qv(pr), 4);
      });

  add("1.2.2.0", ParityGate::odd, 2, std::vector<int>{2}, "q prime",
      "delta odd and eps in {-3,-2,2,3}", Provenance::observed,
      [](const Profile& pr, const RuleOptions&) { return q_prime(pr); },
      [](const Profile& pr, const RuleOptions&) {
        const auto& v = lq(pr);
        return v.delta % 2 != 0 && (abs(v.eps) == 2 || abs(v.eps) == 3);
      });

  add("1.3.1.0", ParityGate::odd, 3, std::vector<int>{1}, "q square",
      "s odd and |s| <= sqrt(q)", Provenance::observed,
      [](const Profile& pr, const RuleOptions&) { return q_square(pr); },
      [](const Profile& pr, const RuleOptions&) {
        return pr.coeffs.s % 2 != 0 && pr.coeffs.s * pr.coeffs.s <= qv(pr);
      });

  add("1.3.1.1", ParityGate::odd, 3, std::vector<int>{1}, "q prime, q = 3 mod 4, q > 3",
      "|alpha| <= 3 and |gamma| <= 3", Provenance::observed,
      [](const Profile& pr, const RuleOptions&) {
        return q_prime(pr) && mod_nonneg(qv(pr), 4) == 3 && qv(pr) > 3;
      },
      [](const Profile& pr, const RuleOptions&) {
        return abs(tl(pr).alpha) <= 3 && abs(tl(pr).gamma) <= 3;
      });

  add("1.3.2.0", ParityGate::odd, 3, std::vector<int>{2}, "p != q",
      "gamma = p*v_p(q) and (beta-alpha = 2 or (alpha = -p*v_p(q) and gamma-beta = 2))",
      Provenance::observed,
      [](const Profile& pr, const RuleOptions&) { return pr.coeffs.field.r > 1; },
      [](const Profile& pr, const RuleOptions& opt) {
        const auto& v = tl(pr);
        const FieldParams& f = pr.coeffs.field;
        return eq_pvq(v.gamma, f, opt) &&
               (v.beta - v.alpha == 2 || (eq_pvq(v.alpha, f, opt, -1) && v.gamma - v.beta == 2));
      });

  add("1.3.2.1", ParityGate::odd, 3, std::vector<int>{2}, "q = 1 mod 4",
      "(alpha,beta,gamma) in {(-2,-2,0), (0,2,2)}", Provenance::observed,
      [](const Profile& pr, const RuleOptions&) { return mod_nonneg(qv(pr), 4) == 1; },
      [](const Profile& pr, const RuleOptions&) {
        const auto& v = tl(pr);
        return (v.alpha == -2 && v.beta == -2 && v.gamma == 0) ||
               (v.alpha == 0 && v.beta == 2 && v.gamma == 2);
      });

  add("1.3.N.0", ParityGate::odd, 3, std::vector<int>{}, "",
      "alpha^2 + beta^2 + gamma^2 = 9", Provenance::observed, no_gate(),
      [](const Profile& pr, const RuleOptions&) {
        const auto& v = tl(pr);
        return v.alpha * v.alpha + v.beta * v.beta + v.gamma * v.gamma == 9;
      });

  add("1.3.N.1", ParityGate::odd, 3, std::vector<int>{}, "",
      "(alpha,beta,gamma) in {(-4,-1,0),(0,1,4),(-4,-3,0),(0,3,4),(-3,-2,0),(0,2,3),(-1,0,2),(-2,0,1)}",
      Provenance::observed, no_gate(), [](const Profile& pr, const RuleOptions&) {
        static const long set[][3] = {{-4, -1, 0}, {0, 1, 4}, {-4, -3, 0}, {0, 3, 4},
                                      {-3, -2, 0}, {0, 2, 3}, {-1, 0, 2},  {-2, 0, 1}};
        const auto& v = tl(pr);
        for (const auto& e : set)
          if (v.alpha == e[0] && v.beta == e[1] && v.gamma == e[2]) return true;
        return false;
      });

  // ---- parity-independent ----

  add("N.N.N.0", ParityGate::any, std::nullopt, std::vector<int>{}, "",
      "illegal point counts (negative, non-monotone, or above the double-cover bound)",
      Provenance::proved, no_gate(),
      [](const Profile& pr, const RuleOptions&) { return illegal_point_counts(pr); });

  add("N.N.N.1", ParityGate::any, std::nullopt, std::vector<int>{}, "",
      "some splitting of the real cubic over Z has resultant +-1", Provenance::proved,
      no_gate(), [](const Profile& pr, const RuleOptions&) { return resultant_one(pr); });

  add("N.N.N.2", ParityGate::any, std::nullopt, std::vector<int>{}, "q square",
      "real cubic = h0 * (x -+ 2 sqrt(q))^n with h0 ordinary and h0 squarefree at the split root",
      Provenance::proved,
      [](const Profile& pr, const RuleOptions&) { return q_square(pr); },
      [](const Profile& pr, const RuleOptions& opt) { return type_obstruction(pr, opt); });

  add("N.3.N.0", ParityGate::any, 3, std::vector<int>{}, "",
      "alpha = beta = gamma and alpha^2 - 4q in the known obstruction list",
      Provenance::partial, no_gate(),
      [](const Profile& pr, const RuleOptions&) { return discriminant_obstruction(pr); });

  add("N.3.0.0", ParityGate::any, 3, std::vector<int>{0}, "p in {2,3,5}",
      "|alpha| != p*v_p(q) and |gamma| != p*v_p(q)", Provenance::observed,
      [](const Profile& pr, const RuleOptions&) {
        long p = pr.coeffs.field.p;
        return p == 2 || p == 3 || p == 5;
      },
      [](const Profile& pr, const RuleOptions& opt) {
        const auto& v = tl(pr);
        auto c = pvq_const(pr.coeffs.field, opt);
        if (!c.has_value()) return true;  // integer never equals the irrational value
        return abs(v.alpha) != *c && abs(v.gamma) != *c;
      });

  add("N.3.0.1", ParityGate::any, 3, std::vector<int>{0}, "",
      "(alpha,beta) = (-p*v_p(q), -p*v_p(q)) or (beta,gamma) = (p*v_p(q), p*v_p(q))",
      Provenance::observed, no_gate(), [](const Profile& pr, const RuleOptions& opt) {
        const auto& v = tl(pr);
        const FieldParams& f = pr.coeffs.field;
        return (eq_pvq(v.alpha, f, opt, -1) && eq_pvq(v.beta, f, opt, -1)) ||
               (eq_pvq(v.beta, f, opt) && eq_pvq(v.gamma, f, opt));
      });

  return rules;
}

}  // namespace

RuleEngine::RuleEngine(RuleOptions opts) : opts_(opts), rules_(build_rules()) {}

bool RuleEngine::gates_pass(const Rule& rule, const Profile& pr) const {
  bool even = pr.coeffs.field.p == 2;
  if (rule.parity == ParityGate::even && !even) return false;
  if (rule.parity == ParityGate::odd && even) return false;
  if (rule.factors && pr.shape.factor_count() != *rule.factors) return false;
  if (!rule.p_ranks.empty() &&
      std::find(rule.p_ranks.begin(), rule.p_ranks.end(), pr.p_rank) == rule.p_ranks.end())
    return false;
  return rule.gate_pred(pr, opts_);
}

bool RuleEngine::fires(const Rule& rule, const Profile& pr) const {
  return gates_pass(rule, pr) && rule.cond_pred(pr, opts_);
}

Verdict RuleEngine::classify(const Profile& pr) const {
  Verdict v;
  for (const Rule& rule : rules_) {
    if (fires(rule, pr)) v.fired.push_back(rule.id);
  }
  std::sort(v.fired.begin(), v.fired.end());
  v.obstructed = !v.fired.empty();
  v.advisory = advisory_note(pr);
  return v;
}

Verdict RuleEngine::classify(const WeilCoeffs& w) const { return classify(make_profile(w)); }

std::optional<std::string> advisory_note(const Profile& pr) {
  if (pr.coeffs.field.p == 2 && !pr.slopes.empty() && pr.slopes.front() == Slope{1, 3}) {
    return "char-2 Newton polygon with first slope 1/3: conjectured to contain a "
           "hyperelliptic Jacobian";
  }
  return std::nullopt;
}

}  // namespace weil3
