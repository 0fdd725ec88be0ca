// Acceptance gate: one line per criterion, PASS/FAIL/SKIP, exit 0 iff no FAIL.
//
// Criteria 1-4 need the full q <= 25 isogeny-class export, which is not
// shipped with the repository; they skip honestly when it is absent (set
// WEIL3_DATASET or create data/lmfdb_g3_q25.csv with tools/fetch_lmfdb.py).
// Everything else is self-contained and exact.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "weil3/asymptotics.hpp"
#include "weil3/enumerate.hpp"
#include "weil3/ingest.hpp"
#include "weil3/label.hpp"
#include "weil3/stats.hpp"

using namespace weil3;

namespace {

struct Outcome {
  std::string status;  // "PASS", "FAIL", "SKIP"
  std::string detail;
};

bool g_failed = false;

void report(int id, const Outcome& o) {
  std::cout << "CRITERION " << id << ": " << o.status << " — " << o.detail
            << std::endl;
  if (o.status == "FAIL") g_failed = true;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string fmt_seconds(double s) {
  std::ostringstream out;
  out.precision(1);
  out << std::fixed << s << "s";
  return out.str();
}

std::mt19937_64 make_rng(uint64_t salt) {
  return std::mt19937_64(0x77e1137ULL ^ salt);
}

long rand_long(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

int hw_jobs() {
  return static_cast<int>(std::max(2u, std::thread::hardware_concurrency()));
}

const std::vector<long>& small_qs() {
  static const std::vector<long> qs = {2, 3,  4,  5,  7,  8,  9,
                                       11, 13, 16, 17, 19, 23, 25};
  return qs;
}

std::string skip_dataset_msg(const char* what) {
  return std::string(what) +
         " needs the full q<=25 export; not found (set WEIL3_DATASET or create "
         "data/lmfdb_g3_q25.csv with tools/fetch_lmfdb.py)";
}

// ---------------------------------------------------------------------------
// Criteria 1-4: full-dataset regressions.

struct DatasetState {
  bool present = false;
  std::vector<IsogenyRecord> records;
  double load_seconds = 0;
};

DatasetState load_dataset() {
  DatasetState st;
  std::string path;
  if (const char* env = std::getenv("WEIL3_DATASET")) path = env;
  if (path.empty()) {
    std::string fallback =
        std::string(WEIL3_SOURCE_DIR) + "/data/lmfdb_g3_q25.csv";
    if (std::filesystem::exists(fallback)) path = fallback;
  }
  if (path.empty()) return st;
  auto t0 = std::chrono::steady_clock::now();
  IngestResult res = parse_records_file(path);
  st.records = std::move(res.records);
  st.load_seconds = seconds_since(t0);
  st.present = true;
  return st;
}

Outcome criterion1(const DatasetState& ds) {
  if (!ds.present) return {"SKIP", skip_dataset_msg("rule-hit census")};
  RuleEngine engine;  // documented default readings
  auto t0 = std::chrono::steady_clock::now();
  CensusTables tables = census(ds.records, engine);
  double census_s = seconds_since(t0);
  double budget =
      300.0 * std::max(1.0, static_cast<double>(ds.records.size()) / 1e6);

  // Rules whose printed counts are reading-independent, frozen here.
  const std::map<std::string, CountPair> pinned = {
      {"0.N.N.0", {33370, 32855}}, {"1.N.N.0", {245548, 245250}},
      {"N.N.N.0", {1422, 509}},    {"N.N.N.1", {4187, 3543}},
      {"N.N.N.2", {2328, 1819}},   {"N.3.N.0", {113, 4}},
      {"0.N.0.0", {164, 86}},      {"1.2.2.0", {136, 132}},
      {"1.3.N.0", {78, 48}},       {"1.3.N.1", {68, 62}}};
  for (const auto& [id, want] : pinned) {
    auto it = tables.table2.find(id);
    if (it == tables.table2.end() || !(it->second == want))
      return {"FAIL", "rule " + id + " counts (" +
                          std::to_string(it == tables.table2.end()
                                             ? -1
                                             : it->second.hits) +
                          ", ...) differ from the pinned reference"};
  }
  // The remaining rules under the default readings, via the bundled table.
  std::ifstream in(std::string(WEIL3_SOURCE_DIR) + "/data/expected_census_q25.csv");
  CensusTables want = parse_census_csv(in);
  for (const auto& [id, cp] : want.table2) {
    if (!(tables.table2.at(id) == cp))
      return {"FAIL", "rule " + id +
                          " counts differ from data/expected_census_q25.csv "
                          "under the default readings"};
  }
  if (census_s > budget)
    return {"FAIL", "census took " + fmt_seconds(census_s) + " (budget " +
                        fmt_seconds(budget) + ")"};
  return {"PASS", "all 10 pinned rules and all 24 default-reading rules exact "
                  "over " +
                      std::to_string(ds.records.size()) + " records; census " +
                      fmt_seconds(census_s) + ", ingest " +
                      fmt_seconds(ds.load_seconds)};
}

Outcome criterion2(const DatasetState& ds) {
  if (!ds.present) return {"SKIP", skip_dataset_msg("undetected-fraction census")};
  RuleEngine engine;
  CensusTables tables = census(ds.records, engine);
  RatioPair want13{6009, 247844};
  if (!(tables.table3.at(CategoryKey{1, 3}) == want13))
    return {"FAIL", "category (1,3) undetected/total differs from 6009/247844"};
  if (!(tables.total == RatioPair{15117, 301235}))
    return {"FAIL", "overall undetected/total differs from 15117/301235"};
  if (ratio4(15117, 301235) != "0.0502")
    return {"FAIL", "ratio rendering of 15117/301235 is not 0.0502"};
  std::ifstream in(std::string(WEIL3_SOURCE_DIR) + "/data/expected_census_q25.csv");
  CensusTables want = parse_census_csv(in);
  for (const auto& [key, rp] : want.table3) {
    if (!(tables.table3.at(key) == rp))
      return {"FAIL", "a category row differs from data/expected_census_q25.csv"};
  }
  return {"PASS",
          "all 12 categories and the total match, including (1,3) = "
          "6009/247844 and total 15117/301235 (0.0502)"};
}

Outcome criterion3(const DatasetState& ds) {
  if (!ds.present) return {"SKIP", skip_dataset_msg("soundness audit")};
  RuleEngine engine;
  AuditReport rep = audit(ds.records, engine);
  if (!rep.false_positives.empty())
    return {"FAIL", std::to_string(rep.false_positives.size()) +
                        " rule firings on flagged records, first " +
                        rep.false_positives.front().first};
  return {"PASS", "zero rule firings across " +
                      std::to_string(rep.with_hyp_flag) +
                      " records flagged as containing a hyperelliptic "
                      "Jacobian"};
}

Outcome criterion4(const DatasetState& ds) {
  if (!ds.present) return {"SKIP", skip_dataset_msg("non-superfluity check")};
  RuleEngine engine;
  AuditReport rep = audit(ds.records, engine);
  long min_unique = -1;
  std::string min_id;
  for (const auto& rule : engine.rules()) {
    long u = rep.per_rule_unique_hits.at(rule.id);
    if (min_unique < 0 || u < min_unique) {
      min_unique = u;
      min_id = rule.id;
    }
  }
  if (min_unique < 1)
    return {"FAIL", "rule " + min_id + " has no unique hits"};
  return {"PASS", "every rule fires uniquely at least once (minimum " +
                      std::to_string(min_unique) + ", at " + min_id + ")"};
}

// ---------------------------------------------------------------------------
// Criterion 5: enumeration vs brute force, exact vs numeric oracle.

using Triple = std::tuple<long, long, long>;

std::set<Triple> brute_locus(const FieldParams& f) {
  std::set<Triple> out;
  long q = f.q.get_si();
  long sb = isqrt(36 * f.q).get_si() + 2;
  long ub = isqrt(400 * f.q * f.q * f.q).get_si() + 2;
  for (long s = -sb; s <= sb; ++s)
    for (long t = -15 * q - 2; t <= 15 * q + 2; ++t)
      for (long u = -ub; u <= ub; ++u)
        if (is_weil_root_locus({f, s, t, u})) out.emplace(s, t, u);
  return out;
}

// Floating-point root-location check: +1 inside, 0 outside, -1 too close to
// a boundary to call.
int numeric_oracle(const WeilCoeffs& w) {
  RealCubic g = real_weil(w);
  long double A = mpz_get_d(g.a.get_mpz_t());
  long double B = mpz_get_d(g.b.get_mpz_t());
  long double C = mpz_get_d(g.c.get_mpz_t());
  long double q = mpz_get_d(w.field.q.get_mpz_t());
  long double L = 2.0L * sqrtl(q);

  // Depressed cubic z^3 + P z + Q, y = z - A/3.
  long double P = B - A * A / 3.0L;
  long double Q = C + (2.0L * A * A * A - 9.0L * A * B) / 27.0L;
  long double disc = -4.0L * P * P * P - 27.0L * Q * Q;
  long double disc_scale =
      4.0L * fabsl(P * P * P) + 27.0L * Q * Q + 1.0L;
  if (fabsl(disc) <= 1e-14L * disc_scale) return -1;
  if (disc < 0) return 0;  // one real root, conjugate pair: not totally real

  long double m = 2.0L * sqrtl(-P / 3.0L);
  long double cosarg = (3.0L * Q) / (P * m);  // cos of the tripled angle
  if (cosarg > 1.0L) cosarg = 1.0L;
  if (cosarg < -1.0L) cosarg = -1.0L;
  long double theta = acosl(cosarg) / 3.0L;
  const long double kTwoPiThird = 2.0943951023931954923L;
  for (int k = 0; k < 3; ++k) {
    long double y = m * cosl(theta - kTwoPiThird * k) - A / 3.0L;
    long double gap = L - fabsl(y);
    if (fabsl(gap) <= 1e-11L * (L + fabsl(y) + 1.0L)) return -1;
    if (gap < 0) return 0;
  }
  return 1;
}

Outcome criterion5() {
  auto t0 = std::chrono::steady_clock::now();
  for (long q : {2L, 3L, 4L, 5L}) {
    FieldParams f = FieldParams::from_q(q);
    std::set<Triple> brute = brute_locus(f);
    std::set<Triple> fast;
    for_each_valid(f, [&](const WeilCoeffs& w) {
      fast.emplace(w.s.get_si(), w.t.get_si(), w.u.get_si());
    });
    if (brute != fast)
      return {"FAIL", "interval enumeration differs from brute force at q = " +
                          std::to_string(q) + " (" + std::to_string(fast.size()) +
                          " vs " + std::to_string(brute.size()) + ")"};
  }

  std::mt19937_64 rng = make_rng(5);
  long decided = 0, undecided = 0;
  const long kTrials = 100000;
  const long n_qs = static_cast<long>(small_qs().size());
  for (long i = 0; i < kTrials; ++i) {
    long q = small_qs()[rand_long(rng, 0, n_qs - 1)];
    FieldParams f = FieldParams::from_q(q);
    long sb = isqrt(36 * f.q).get_si() + 1;
    long ub = isqrt(400 * f.q * f.q * f.q).get_si() + 1;
    WeilCoeffs w{f, rand_long(rng, -sb, sb), rand_long(rng, -15 * q - 1, 15 * q + 1),
                 rand_long(rng, -ub, ub)};
    int numeric = numeric_oracle(w);
    if (numeric < 0) {
      ++undecided;
      continue;
    }
    ++decided;
    if ((numeric == 1) != is_weil_root_locus(w))
      return {"FAIL", "exact and numeric oracles disagree at q=" +
                          std::to_string(q) + " s=" + w.s.get_str() + " t=" +
                          w.t.get_str() + " u=" + w.u.get_str()};
  }
  double elapsed = seconds_since(t0);
  if (decided < kTrials * 9 / 10)
    return {"FAIL", "numeric oracle undecided too often (" +
                        std::to_string(undecided) + "/" +
                        std::to_string(kTrials) + ")"};
  if (elapsed > 120.0)
    return {"FAIL", "took " + fmt_seconds(elapsed) + ", budget 120s"};
  return {"PASS", "sets equal for q in {2,3,4,5}; " + std::to_string(decided) +
                      "/" + std::to_string(kTrials) +
                      " random triples decided numerically, zero disagreements "
                      "(" +
                      fmt_seconds(elapsed) + ")"};
}

// ---------------------------------------------------------------------------
// Criterion 6: power sums three ways.

Int newton_chain(const WeilCoeffs& w, int n) {
  const Int& q = w.field.q;
  const Int e[7] = {0,         w.s,           w.t, w.u, q * w.t,
                    q * q * w.s, q * q * q};
  std::vector<Int> p(n + 1);
  p[0] = 6;
  for (int k = 1; k <= n; ++k) {
    Int acc = 0;
    for (int i = 1; i < k; ++i) acc += (i % 2 ? 1 : -1) * e[i] * p[k - i];
    acc += (k % 2 ? 1 : -1) * k * e[k];
    p[k] = acc;
  }
  return p[n];
}

using Mat = std::array<std::array<Int, 6>, 6>;

Mat mat_mul(const Mat& x, const Mat& y) {
  Mat z{};
  for (int i = 0; i < 6; ++i)
    for (int k = 0; k < 6; ++k)
      if (x[i][k] != 0)
        for (int j = 0; j < 6; ++j) z[i][j] += x[i][k] * y[k][j];
  return z;
}

Int companion_trace(const WeilCoeffs& w, int n) {
  const Int& q = w.field.q;
  // Monic characteristic polynomial of the mirrored root system:
  // x^6 - s x^5 + t x^4 - u x^3 + qt x^2 - q^2 s x + q^3.
  Int c[6] = {q * q * q, -q * q * w.s, q * w.t, -w.u, w.t, -w.s};
  Mat m{};
  for (int i = 1; i < 6; ++i) m[i][i - 1] = 1;
  for (int i = 0; i < 6; ++i) m[i][5] = -c[i];
  Mat acc = m;
  for (int i = 1; i < n; ++i) acc = mat_mul(acc, m);
  Int tr = 0;
  for (int i = 0; i < 6; ++i) tr += acc[i][i];
  return tr;
}

Outcome criterion6() {
  std::mt19937_64 rng = make_rng(6);
  const long n_qs = static_cast<long>(small_qs().size());
  for (int trial = 0; trial < 1000; ++trial) {
    long q = small_qs()[rand_long(rng, 0, n_qs - 1)];
    WeilCoeffs w{FieldParams::from_q(q), rand_long(rng, -1000, 1000),
                 rand_long(rng, -1000, 1000), rand_long(rng, -1000, 1000)};
    for (int n = 1; n <= 6; ++n) {
      Int closed = power_sum(w, n);
      Int chain = newton_chain(w, n);
      Int trace = companion_trace(w, n);
      if (closed != chain || closed != trace)
        return {"FAIL", "power sum p_" + std::to_string(n) + " mismatch at q=" +
                            std::to_string(q) + " s=" + w.s.get_str() + " t=" +
                            w.t.get_str() + " u=" + w.u.get_str() + ": " +
                            closed.get_str() + " / " + chain.get_str() + " / " +
                            trace.get_str()};
    }
  }
  return {"PASS",
          "closed forms, symmetric-function chain, and companion-matrix "
          "traces agree exactly on 1000 random inputs, n = 1..6"};
}

// ---------------------------------------------------------------------------
// Criterion 7: codec round-trip plus the two reference labels.

Outcome criterion7() {
  std::mt19937_64 rng = make_rng(7);
  const long kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                          43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
  for (int trial = 0; trial < 10000; ++trial) {
    long p = kPrimes[rand_long(rng, 0, 24)];
    long r = rand_long(rng, 1, 3);
    Int q = pow_int(Int(p), r);
    std::vector<Int> coeffs = {rand_long(rng, -1000000, 1000000),
                               rand_long(rng, -1000000, 1000000),
                               rand_long(rng, -1000000, 1000000)};
    std::string label = encode_label(3, q, coeffs);
    DecodedLabel dec = decode_label(label);
    if (dec.g != 3 || dec.q != q || dec.coeffs != coeffs)
      return {"FAIL", "round-trip failed for " + label};
  }

  RuleEngine engine;
  DecodedLabel a = decode_label("3.25.f_ay_ajl");
  Verdict va = engine.classify(
      WeilCoeffs{FieldParams::from_q(a.q), a.coeffs[0], a.coeffs[1], a.coeffs[2]});
  bool a_ok = va.obstructed &&
              std::find(va.fired.begin(), va.fired.end(), "1.N.N.0") !=
                  va.fired.end();
  DecodedLabel b = decode_label("3.23.c_e_do");
  Verdict vb = engine.classify(
      WeilCoeffs{FieldParams::from_q(b.q), b.coeffs[0], b.coeffs[1], b.coeffs[2]});
  bool b_ok = !vb.obstructed && vb.fired.empty();
  if (!a_ok)
    return {"FAIL", "3.25.f_ay_ajl should be obstructed via 1.N.N.0"};
  if (!b_ok) return {"FAIL", "3.23.c_e_do should fire no rules"};
  return {"PASS",
          "10000 encode/decode round-trips exact; 3.25.f_ay_ajl fires "
          "1.N.N.0 and 3.23.c_e_do fires nothing"};
}

// ---------------------------------------------------------------------------
// Criterion 8: parity-proportion trend at growing q.

Rat abs_rat(Rat x) {
  if (x < 0) x = -x;
  return x;
}

Outcome criterion8() {
  auto t0 = std::chrono::steady_clock::now();
  int jobs = hw_jobs();

  std::vector<long> odd_primes;
  for (long n = 3; n <= 499; n += 2)
    if (is_prime(n)) odd_primes.push_back(n);

  Rat quarter(1, 4), half(1, 2);
  Rat final_odd;
  for (long p : odd_primes) {
    Rat c = chi3(FieldParams::from_q(p), Chi3Universe::ordinary, jobs);
    if (p >= 101 && abs_rat(c - quarter) > Rat(5, 100))
      return {"FAIL", "chi3(" + std::to_string(p) +
                          ") strays beyond 0.05 of 1/4: " +
                          std::to_string(mpq_get_d(c.get_mpq_t()))};
    if (p == 499) final_odd = c;
  }
  if (abs_rat(final_odd - quarter) > Rat(2, 100))
    return {"FAIL", "chi3(499) = " +
                        std::to_string(mpq_get_d(final_odd.get_mpq_t())) +
                        " not within 0.02 of 1/4"};

  Rat final_even;
  for (Int q = 2; q <= 256; q *= 2)
    final_even = chi3(FieldParams::from_q(q), Chi3Universe::ordinary, jobs);
  if (abs_rat(final_even - half) > Rat(3, 100))
    return {"FAIL", "chi3(256) = " +
                        std::to_string(mpq_get_d(final_even.get_mpq_t())) +
                        " not within 0.03 of 1/2"};

  double elapsed = seconds_since(t0);
  if (elapsed > 600.0)
    return {"FAIL", "sweep took " + fmt_seconds(elapsed) + ", budget 600s"};
  std::ostringstream detail;
  detail.precision(6);
  detail << std::fixed << "chi3(499) = " << mpq_get_d(final_odd.get_mpq_t())
         << " (target 0.25 +- 0.02, drift <= 0.05 from q = 101), chi3(256) = "
         << mpq_get_d(final_even.get_mpq_t()) << " (target 0.5 +- 0.03); "
         << fmt_seconds(elapsed);
  return {"PASS", detail.str()};
}

// ---------------------------------------------------------------------------
// Criterion 9: split-count identity and the dominant piece.

Outcome criterion9() {
  std::vector<Int> qs;
  for (long n = 2; qs.size() < 38; ++n)
    if (is_prime(n)) qs.push_back(n);
  for (long p : {2L, 3L, 5L, 7L})  // higher prime powers, mixed parities
    for (long r = 2; r <= 4; ++r) qs.push_back(pow_int(Int(p), r));
  qs.push_back(10007);
  qs.push_back(16384);
  qs.push_back(19683);
  qs.push_back(78125);
  qs.push_back(100003);
  if (qs.size() != 55) return {"FAIL", "internal: prime-power list size"};

  int checked_big = 0;
  for (const auto& q : qs) {
    FieldParams f = FieldParams::from_q(q);
    SplitCounts sc = split_counts(f);
    QuadRat total = predicted_count(3, f);
    if (!(sc.n222 + sc.n24 + sc.n6 == total))
      return {"FAIL", "n222 + n24 + n6 != I(3, q) at q = " + q.get_str()};
    if (q >= 10000) {
      ++checked_big;
      QuadRat hundred{Rat(100), Rat(0), f.q};
      QuadRat ninety_nine{Rat(99), Rat(0), f.q};
      if ((sc.n6 * hundred - total * ninety_nine).sign() <= 0)
        return {"FAIL", "n6 / I(3, q) <= 0.99 at q = " + q.get_str()};
    }
  }
  return {"PASS", "n222 + n24 + n6 = I(3, q) exactly for " +
                      std::to_string(qs.size()) + " prime powers; n6 share " +
                      "exceeds 0.99 at all " + std::to_string(checked_big) +
                      " values with q >= 10^4"};
}

}  // namespace

int main() {
  DatasetState ds = load_dataset();
  try {
    report(1, criterion1(ds));
    report(2, criterion2(ds));
    report(3, criterion3(ds));
    report(4, criterion4(ds));
    report(5, criterion5());
    report(6, criterion6());
    report(7, criterion7());
    report(8, criterion8());
    report(9, criterion9());
  } catch (const std::exception& e) {
    std::cout << "CRITERION ?: FAIL — unexpected exception: " << e.what()
              << std::endl;
    g_failed = true;
  }
  std::cout << (g_failed ? "acceptance: FAIL" : "acceptance: OK") << std::endl;
  return g_failed ? 1 : 0;
}
