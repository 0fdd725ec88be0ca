#pragma once

// Exact enumeration of the coefficient locus for fixed q.
//
// For fixed (s, t) the admissible u form a contiguous interval: in terms of
// the real cubic y^3 + ay^2 + by + c, the set of c keeping all roots real is
// the band between the two double-root values (a discriminant condition,
// quadratic in c), and keeping them inside [-2 sqrt(q), 2 sqrt(q)] adds two
// endpoint sign constraints that are linear in c.  Both bands have exact
// integer endpoints via isqrt, so the whole locus can be enumerated - or
// counted by residue class without materializing - from O(sqrt(q) * q)
// interval computations.

#include <functional>
#include <vector>

#include "weil3/core.hpp"
#include "weil3/ingest.hpp"

namespace weil3 {

struct UInterval {
  Int lo, hi;  // inclusive; empty iff lo > hi
  bool empty() const { return lo > hi; }
  Int length() const { return empty() ? Int(0) : Int(hi - lo + 1); }
  bool contains(const Int& u) const { return lo <= u && u <= hi; }
  friend bool operator==(const UInterval&, const UInterval&) = default;
};

// The exact set { u : is_weil_root_locus(q, s, t, u) }, always an interval.
UInterval u_interval(const FieldParams& field, const Int& s, const Int& t);

namespace detail {

// GMP reference implementation, valid for any magnitudes.
UInterval u_interval_exact(const FieldParams& field, const Int& s, const Int& t);

// 128-bit fast path.  Requires q <= kFastPathMaxQ, s^2 <= 36q, -q <= t <= 15q.
// Writes lo > hi (0, -1) when the interval is empty.
inline constexpr long kFastPathMaxQ = 1000000000L;
void u_interval_fast(long q, long s, long long t, long long& lo, long long& hi);

}  // namespace detail

// floor(6 sqrt(q)): largest |s| compatible with the locus.
Int s_bound(const FieldParams& field);

// Visits every locus triple in (s, t, u)-lexicographic ascending order.
void for_each_valid(const FieldParams& field,
                    const std::function<void(const WeilCoeffs&)>& fn);

// Locus cardinality, computed from interval lengths (no materialization).
Int count_valid(const FieldParams& field, int jobs = 1);

// Coefficient triples present in `records` at the given q, sorted in the same
// (s, t, u)-lexicographic order.  Throws std::runtime_error if no record
// matches (dataset admissibility needs data to speak for the field).
std::vector<WeilCoeffs> dataset_coeffs(const std::vector<IsogenyRecord>& records,
                                       const FieldParams& field);

// Residue-class tallies over the whole locus for one q.
//
//   locus            all lattice points on the locus
//   ordinary         those with p not dividing u
//   parity_locus     those matching the parity-rule residues
//                    (odd q: t even, u odd; even q: (s,t,u) = (0,1,1), (1,0,1)
//                    or (1,1,0) mod 2)
//   parity_ordinary  parity-rule residues that are also ordinary
struct LatticeTallies {
  Int locus, ordinary, parity_locus, parity_ordinary;
};

// Computed per (s, t) slice from interval endpoints; parallel over s.
LatticeTallies lattice_tallies(const FieldParams& field, int jobs = 1);

}  // namespace weil3
