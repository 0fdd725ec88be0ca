#pragma once

// Predicted isogeny-class counts and large-q proportion sweeps.
//
// The predicted count for dimension g is
//
//   I(g, q) = c_g * r(q) * q^{g(g+1)/4},   c_1 = 4, c_2 = 32/3, c_3 = 1024/45,
//
// with r(q) = phi(q)/q = 1 - 1/p by default (an alternative constant-1 reading
// is selectable for comparison).  For g in {1, 2} and non-square q the value
// lives in Q + Q*sqrt(q), represented exactly by QuadRat.  The splitting
// counts derive from I:
//
//   n222 = C(I1 + 2, 3),  n24 = I1 * (I2 - C(I1 + 1, 2)),  n6 = I3 - n24 - n222,
//
// of asymptotic orders q^{3/2}, q^2, q^3 respectively.  chi3 is the exact
// lattice proportion of the parity-rule residues; pi3 and the records-based
// variants read the ingested ground truth instead.

#include <string>
#include <vector>

#include "weil3/enumerate.hpp"
#include "weil3/ingest.hpp"

namespace weil3 {

// ---------------------------------------------------------------------------
// Exact values in Q + Q*sqrt(q).

struct QuadRat {
  Rat rat, irr;  // value = rat + irr*sqrt(q); irr == 0 whenever q is square
  Int q;

  int sign() const;
  double approx() const;
  // Fixed-point decimal with `digits` fractional digits, round-half-even
  // (correct within one final-digit ulp for irrational values).
  std::string decimal(int digits) const;

  friend QuadRat operator+(const QuadRat& x, const QuadRat& y);
  friend QuadRat operator-(const QuadRat& x, const QuadRat& y);
  friend QuadRat operator*(const QuadRat& x, const QuadRat& y);
  friend bool operator==(const QuadRat& x, const QuadRat& y);
};

// Normalizes: for square q the sqrt(q)-part is folded into the rational part.
QuadRat quadrat(const FieldParams& field, const Rat& rat, const Rat& irr);

// ---------------------------------------------------------------------------
// Predicted counts.

enum class RFactor { phi_over_q, one };

// I(g, q); throws std::invalid_argument unless g in {1, 2, 3}.
QuadRat predicted_count(int g, const FieldParams& field,
                        RFactor r = RFactor::phi_over_q);

struct SplitCounts {
  QuadRat n222, n24, n6;
};
SplitCounts split_counts(const FieldParams& field,
                         RFactor r = RFactor::phi_over_q);

// ---------------------------------------------------------------------------
// Proportions.

// Denominator reading for chi3: the ordinary sublattice (the stand-in for
// isogeny classes, since non-ordinary ones thin out) or the whole locus.
enum class Chi3Universe { ordinary, root_locus };

Rat chi3_from_tallies(const LatticeTallies& tallies, Chi3Universe universe);
// Exact lattice proportion at q (enumeration source; no materialization).
Rat chi3(const FieldParams& field, Chi3Universe universe = Chi3Universe::ordinary,
         int jobs = 1);
// Fired-proportion of the parity rule over the ingested records at q.
Rat chi3_records(const std::vector<IsogenyRecord>& records, const FieldParams& field);

// Non-hyperelliptic proportion over flagged records at q; throws
// std::runtime_error when no flagged record has this q.
Rat pi3(const std::vector<IsogenyRecord>& records, const FieldParams& field);

Rat nonordinary_fraction(const FieldParams& field, int jobs = 1);
Rat nonordinary_fraction_records(const std::vector<IsogenyRecord>& records,
                                 const FieldParams& field);

// ---------------------------------------------------------------------------
// Report.

// One row per q, ascending; chi3 carried exactly plus 6-decimal renderings.
struct AsymptoticsRow {
  Int q;
  bool even = false;
  Rat chi3, nonordinary;
  QuadRat i1, i2, i3, n222, n24, n6;
};

AsymptoticsRow asymptotics_row(const FieldParams& field, Chi3Universe universe,
                               RFactor r, int jobs);

// format: "csv" column set
//   q,parity,chi3_num,chi3_den,chi3,nonordinary_fraction,I1,I2,I3,n222,n24,n6
// or a Markdown summary ("md"), or machine JSON ("json").
std::string render_asymptotics(const std::vector<AsymptoticsRow>& rows,
                               const std::string& format);

}  // namespace weil3
