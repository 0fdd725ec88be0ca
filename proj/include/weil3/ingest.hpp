#pragma once

// Dataset ingestion and soundness auditing.
//
// The canonical interchange is a comma-separated text file with header
//   label,q,p,r,s,t,u,p_rank,factor_count,hyp_jacobian,jacobian
// where an empty cell means "unknown", integers are decimal, and booleans are
// 0/1.  Raw database exports (JSON objects, one per line or in one array) can
// be mapped onto the same columns through a small adapter configuration.

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "weil3/core.hpp"
#include "weil3/rules.hpp"

namespace weil3 {

struct IsogenyRecord {
  std::string label;
  long g = 3;
  WeilCoeffs coeffs;  // includes FieldParams
  int p_rank = 0;          // recomputed at ingest
  int factor_count = 0;    // recomputed at ingest
  std::optional<bool> hyp_jacobian;  // contains a hyperelliptic Jacobian
  std::optional<bool> jacobian;      // contains any Jacobian
};

// Whether a repeated linear factor of the real cubic counts once or with
// multiplicity when cross-checking a source factor_count column.
enum class FactorConvention { with_multiplicity, distinct };

struct IngestOptions {
  FactorConvention factor_convention = FactorConvention::with_multiplicity;
};

struct IngestResult {
  std::vector<IsogenyRecord> records;
  long skipped_other_genus = 0;
};

int factor_count_of(const FactorShape& shape, FactorConvention conv);

// Parse the normalized tabular format.  Every record is validated: the label
// must decode to (g, q, s, t, u) consistent with the explicit columns, the
// coefficients must pass the root-locus test, and p_rank / factor_count
// columns, when present, must equal the recomputed values.  Violations are
// hard errors (std::runtime_error) naming the label and field.  Rows with
// g != 3 are skipped and counted.
IngestResult parse_records(std::istream& in, const IngestOptions& opts = {});
IngestResult parse_records_file(const std::string& path, const IngestOptions& opts = {});

// Adapter for raw JSON exports: maps source field names onto normalized
// columns.  `field_map` keys are normalized column names ("label", "q", "s",
// "t", "u", "p_rank", "factor_count", "hyp_jacobian", "jacobian", "g",
// "coeffs"); values are the source object's field names.  "coeffs" may name a
// field holding [s, t, u, ...]; explicit s/t/u entries win if both present.
// Missing mappings mean the column is unknown.
IngestResult parse_raw_export(std::istream& in, const std::map<std::string, std::string>& field_map,
                              const IngestOptions& opts = {});
IngestResult parse_raw_export_file(const std::string& path, const std::string& adapter_path,
                                   const IngestOptions& opts = {});

// Serialize records in the normalized tabular format (deterministic; one row
// per record in input order).
void write_records(std::ostream& out, const std::vector<IsogenyRecord>& records);

// ---------------------------------------------------------------------------
// Soundness audit.

struct AuditReport {
  long total = 0;
  long with_hyp_flag = 0;
  // Records flagged as containing a hyperelliptic Jacobian on which at least
  // one rule fired: each is a demonstrated soundness failure.
  std::vector<std::pair<std::string, std::vector<std::string>>> false_positives;
  std::map<std::string, long> per_rule_hits;
  std::map<std::string, long> per_rule_unique_hits;  // fired alone
};

AuditReport audit(const std::vector<IsogenyRecord>& records, const RuleEngine& engine);

}  // namespace weil3
