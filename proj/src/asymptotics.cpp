#include "weil3/asymptotics.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace weil3 {

namespace {

void require_same_q(const QuadRat& x, const QuadRat& y) {
  if (x.q != y.q)
    throw std::invalid_argument("QuadRat arithmetic across different q");
}

// Exact sign of a + b*sqrt(q), q > 0 not a perfect square when b != 0 matters.
int sign_of(const Rat& a, const Rat& b, const Int& q) {
  int sa = sgn(a), sb = sgn(b);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // opposite signs: compare a^2 with b^2 q
  Rat lhs = a * a, rhs = b * b * q;
  int c = cmp(lhs, rhs);
  if (c == 0) return 0;  // can only happen for square q pre-normalization
  return (c > 0) ? sa : sb;
}

// Round-half-even fixed-point rendering of an exact rational.
std::string decimal_of_rat(const Rat& v, int digits) {
  Int scale = pow_int(10, static_cast<unsigned long>(digits));
  Int num = v.get_num() * scale, den = v.get_den();
  bool neg = sgn(num) < 0;
  if (neg) num = -num;
  Int quot = fdiv(num, den), rem = num - quot * den;
  int c = cmp(2 * rem, den);
  if (c > 0 || (c == 0 && mpz_odd_p(quot.get_mpz_t()) != 0)) ++quot;
  Int ip = fdiv(quot, scale), fp = quot - ip * scale;
  std::string frac = fp.get_str();
  std::string out = (neg && quot != 0 ? "-" : "") + ip.get_str() + "." +
                    std::string(static_cast<size_t>(digits) - frac.size(), '0') +
                    frac;
  return out;
}

const char kCsvHeader[] =
    "q,parity,chi3_num,chi3_den,chi3,nonordinary_fraction,I1,I2,I3,n222,n24,n6";

}  // namespace

QuadRat quadrat(const FieldParams& field, const Rat& rat, const Rat& irr) {
  QuadRat v{rat, irr, field.q};
  if (field.q_is_square() && sgn(v.irr) != 0) {
    v.rat += v.irr * Rat(field.sqrt_q());
    v.irr = 0;
  }
  v.rat.canonicalize();
  v.irr.canonicalize();
  return v;
}

int QuadRat::sign() const { return sign_of(rat, irr, q); }

double QuadRat::approx() const {
  return rat.get_d() + irr.get_d() * std::sqrt(q.get_d());
}

std::string QuadRat::decimal(int digits) const {
  if (sgn(irr) == 0) return decimal_of_rat(rat, digits);
  // Replace sqrt(q) by a floor approximation 12 digits finer than requested.
  unsigned long guard = static_cast<unsigned long>(digits) + 12;
  Int scale = pow_int(10, guard);
  Rat root(isqrt(q * scale * scale), scale);
  return decimal_of_rat(rat + irr * root, digits);
}

QuadRat operator+(const QuadRat& x, const QuadRat& y) {
  require_same_q(x, y);
  return {x.rat + y.rat, x.irr + y.irr, x.q};
}

QuadRat operator-(const QuadRat& x, const QuadRat& y) {
  require_same_q(x, y);
  return {x.rat - y.rat, x.irr - y.irr, x.q};
}

QuadRat operator*(const QuadRat& x, const QuadRat& y) {
  require_same_q(x, y);
  return {x.rat * y.rat + x.irr * y.irr * Rat(x.q),
          x.rat * y.irr + x.irr * y.rat, x.q};
}

bool operator==(const QuadRat& x, const QuadRat& y) {
  return x.q == y.q && cmp(x.rat, y.rat) == 0 && cmp(x.irr, y.irr) == 0;
}

QuadRat predicted_count(int g, const FieldParams& field, RFactor r) {
  Rat c;
  switch (g) {
    case 1: c = 4; break;
    case 2: c = Rat(32, 3); break;
    case 3: c = Rat(1024, 45); break;
    default: throw std::invalid_argument("predicted_count: g must be 1, 2 or 3");
  }
  if (r == RFactor::phi_over_q) c *= Rat(field.p - 1, field.p);
  // q^{g(g+1)/4}: integer power q^{m/2} with m = g(g+1)/2.
  unsigned long m = static_cast<unsigned long>(g) * (g + 1) / 2;
  Int whole = pow_int(field.q, m / 2);
  if (m % 2 == 0) return quadrat(field, c * Rat(whole), 0);
  return quadrat(field, 0, c * Rat(whole));
}

SplitCounts split_counts(const FieldParams& field, RFactor r) {
  QuadRat i1 = predicted_count(1, field, r);
  QuadRat i2 = predicted_count(2, field, r);
  QuadRat i3 = predicted_count(3, field, r);
  auto shifted = [&](const QuadRat& x, long k) {
    return quadrat(field, x.rat + k, x.irr);
  };
  auto scaled = [&](const QuadRat& x, const Rat& f) {
    return quadrat(field, x.rat * f, x.irr * f);
  };
  QuadRat n222 = scaled(i1 * shifted(i1, 1) * shifted(i1, 2), Rat(1, 6));
  QuadRat n24 = i1 * (i2 - scaled(i1 * shifted(i1, 1), Rat(1, 2)));
  QuadRat n6 = i3 - n24 - n222;
  return {n222, n24, n6};
}

Rat chi3_from_tallies(const LatticeTallies& tallies, Chi3Universe universe) {
  Int num = universe == Chi3Universe::ordinary ? tallies.parity_ordinary
                                               : tallies.parity_locus;
  Int den = universe == Chi3Universe::ordinary ? tallies.ordinary : tallies.locus;
  if (sgn(den) == 0) throw std::runtime_error("chi3: empty universe");
  Rat out(num, den);
  out.canonicalize();
  return out;
}

Rat chi3(const FieldParams& field, Chi3Universe universe, int jobs) {
  return chi3_from_tallies(lattice_tallies(field, jobs), universe);
}

Rat chi3_records(const std::vector<IsogenyRecord>& records,
                 const FieldParams& field) {
  const std::string rule_id = field.p == 2 ? "0.N.N.0" : "1.N.N.0";
  RuleEngine engine;
  long total = 0, fired = 0;
  for (const auto& rec : records) {
    if (rec.coeffs.field.q != field.q) continue;
    ++total;
    auto v = engine.classify(rec.coeffs);
    if (std::find(v.fired.begin(), v.fired.end(), rule_id) != v.fired.end())
      ++fired;
  }
  if (total == 0)
    throw std::runtime_error("chi3: no records for q = " + field.q.get_str());
  Rat out(fired, total);
  out.canonicalize();
  return out;
}

Rat pi3(const std::vector<IsogenyRecord>& records, const FieldParams& field) {
  long total = 0, non_hyp = 0;
  for (const auto& rec : records) {
    if (rec.coeffs.field.q != field.q || !rec.hyp_jacobian) continue;
    ++total;
    if (!*rec.hyp_jacobian) ++non_hyp;
  }
  if (total == 0)
    throw std::runtime_error("pi3: no flagged records for q = " +
                             field.q.get_str());
  Rat out(non_hyp, total);
  out.canonicalize();
  return out;
}

Rat nonordinary_fraction(const FieldParams& field, int jobs) {
  auto tallies = lattice_tallies(field, jobs);
  if (sgn(tallies.locus) == 0)
    throw std::runtime_error("nonordinary_fraction: empty locus");
  Rat out(tallies.locus - tallies.ordinary, tallies.locus);
  out.canonicalize();
  return out;
}

Rat nonordinary_fraction_records(const std::vector<IsogenyRecord>& records,
                                 const FieldParams& field) {
  long total = 0, non_ordinary = 0;
  for (const auto& rec : records) {
    if (rec.coeffs.field.q != field.q) continue;
    ++total;
    if (rec.p_rank < 3) ++non_ordinary;
  }
  if (total == 0)
    throw std::runtime_error("nonordinary_fraction: no records for q = " +
                             field.q.get_str());
  Rat out(non_ordinary, total);
  out.canonicalize();
  return out;
}

AsymptoticsRow asymptotics_row(const FieldParams& field, Chi3Universe universe,
                               RFactor r, int jobs) {
  auto tallies = lattice_tallies(field, jobs);
  auto split = split_counts(field, r);
  Rat nonord(tallies.locus - tallies.ordinary, tallies.locus);
  nonord.canonicalize();
  return {field.q,
          field.p == 2,
          chi3_from_tallies(tallies, universe),
          nonord,
          predicted_count(1, field, r),
          predicted_count(2, field, r),
          predicted_count(3, field, r),
          split.n222,
          split.n24,
          split.n6};
}

std::string render_asymptotics(const std::vector<AsymptoticsRow>& rows,
                               const std::string& format) {
  std::ostringstream out;
  if (format == "csv") {
    out << kCsvHeader << "\n";
    for (const auto& row : rows)
      out << row.q.get_str() << "," << (row.even ? "even" : "odd") << ","
          << row.chi3.get_num().get_str() << "," << row.chi3.get_den().get_str()
          << "," << decimal_of_rat(row.chi3, 6) << ","
          << decimal_of_rat(row.nonordinary, 6) << "," << row.i1.decimal(6) << ","
          << row.i2.decimal(6) << "," << row.i3.decimal(6) << ","
          << row.n222.decimal(6) << "," << row.n24.decimal(6) << ","
          << row.n6.decimal(6) << "\n";
    return out.str();
  }
  if (format == "json") {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
      j.push_back({{"q", row.q.get_str()},
                   {"parity", row.even ? "even" : "odd"},
                   {"chi3_num", row.chi3.get_num().get_str()},
                   {"chi3_den", row.chi3.get_den().get_str()},
                   {"chi3", decimal_of_rat(row.chi3, 6)},
                   {"nonordinary_fraction", decimal_of_rat(row.nonordinary, 6)},
                   {"I1", row.i1.decimal(6)},
                   {"I2", row.i2.decimal(6)},
                   {"I3", row.i3.decimal(6)},
                   {"n222", row.n222.decimal(6)},
                   {"n24", row.n24.decimal(6)},
                   {"n6", row.n6.decimal(6)}});
    }
    out << j.dump(2) << "\n";
    return out.str();
  }
  if (format == "md") {
    out << "| q | parity | chi3 | nonordinary | n222 ~ q^1.5 | n24 ~ q^2 | n6 ~ "
           "q^3 |\n|---:|---|---:|---:|---:|---:|---:|\n";
    for (const auto& row : rows)
      out << "| " << row.q.get_str() << " | " << (row.even ? "even" : "odd")
          << " | " << decimal_of_rat(row.chi3, 6) << " | "
          << decimal_of_rat(row.nonordinary, 6) << " | " << row.n222.decimal(2)
          << " | " << row.n24.decimal(2) << " | " << row.n6.decimal(2) << " |\n";
    if (!rows.empty()) {
      const auto& last = rows.back();
      out << "\nfinal q = " << last.q.get_str()
          << ": chi3 = " << decimal_of_rat(last.chi3, 6) << " (target "
          << (last.even ? "0.5" : "0.25") << "), nonordinary fraction "
          << decimal_of_rat(last.nonordinary, 6) << "\n";
    }
    return out.str();
  }
  throw std::invalid_argument("render_asymptotics: unknown format " + format);
}

}  // namespace weil3
