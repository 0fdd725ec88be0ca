#pragma once

// Census over ingested records: per-rule hits / unique hits, per-category
// undetected rates among the non-hyperelliptic records, and rule co-firing
// overlap counts, with deterministic CSV / JSON / Markdown renderings and an
// exact comparator for regression runs against an expected-census file.

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "weil3/ingest.hpp"
#include "weil3/rules.hpp"

namespace weil3 {

// (number of irreducible factors of the real cubic, p-rank): 12 categories.
struct CategoryKey {
  int factor_count = 0;  // 1..3
  int p_rank = 0;        // 0..3
  friend auto operator<=>(const CategoryKey&, const CategoryKey&) = default;
};

struct CountPair {
  long hits = 0;
  long unique_hits = 0;
  friend bool operator==(const CountPair&, const CountPair&) = default;
};

struct RatioPair {
  long undetected = 0;
  long total = 0;
  friend bool operator==(const RatioPair&, const RatioPair&) = default;
};

struct CensusTables {
  std::map<std::string, CountPair> table2;  // every registered rule present
  std::map<CategoryKey, RatioPair> table3;  // all 12 categories present
  RatioPair total;                          // sums over table3
};

// One pass over the records; table3 restricted to hyp_jacobian == false.
CensusTables census(const std::vector<IsogenyRecord>& records,
                    const RuleEngine& engine);

// Symmetric co-firing counts; diagonal equals hits.
using OverlapMatrix = std::map<std::pair<std::string, std::string>, long>;
OverlapMatrix overlap_matrix(const std::vector<IsogenyRecord>& records,
                             const RuleEngine& engine);

// ---------------------------------------------------------------------------
// Rendering.

enum class TableFormat { csv, json, md };

// a/b to 4 decimals, round-half-even, exact integer arithmetic; b > 0.
std::string ratio4(long a, long b);
// Same but truncated; renderers note when the two differ in the last digit.
std::string ratio4_trunc(long a, long b);

std::string render_census(const CensusTables& tables, TableFormat format);
std::string render_overlap(const OverlapMatrix& matrix, const RuleEngine& engine,
                           TableFormat format);

// ---------------------------------------------------------------------------
// Cross-checks.

// Per-rule class counts from the bundled obstruction summary, kept for
// cross-checking the census.  Every row agrees with the recounted hits except
// N.3.N.0, where the summary says 78 but a direct recount gives 113.
const std::map<std::string, long>& summary_isogeny_counts();

// Human-readable comparison of census hits against summary_isogeny_counts().
std::string delta_report(const CensusTables& tables);

// Reads a file produced by render_census(csv); throws std::runtime_error on
// malformed rows.
CensusTables parse_census_csv(std::istream& in);

// Exact integer comparison; returns one message per mismatch, empty if equal.
std::vector<std::string> compare_census(const CensusTables& got,
                                        const CensusTables& want);

}  // namespace weil3
