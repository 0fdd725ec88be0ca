#include "weil3/ingest.hpp"

#include <fstream>
#include <istream>
#include <json.hpp>
#include <ostream>
#include <set>
#include <sstream>

#include "weil3/label.hpp"

namespace weil3 {

namespace {

const std::vector<std::string> kColumns = {"label",  "q", "p", "r", "s", "t", "u",
                                           "p_rank", "factor_count", "hyp_jacobian", "jacobian"};

[[noreturn]] void fail(const std::string& label, const std::string& field,
                       const std::string& why) {
  throw std::runtime_error("record \"" + label + "\", field " + field + ": " + why);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (true) {
    size_t comma = line.find(',', pos);
    out.push_back(line.substr(pos, comma - pos));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

Int parse_int(const std::string& label, const std::string& field, const std::string& cell) {
  if (cell.empty()) fail(label, field, "empty cell where an integer is required");
  try {
    size_t i = (cell[0] == '-') ? 1 : 0;
    if (i == cell.size()) throw std::invalid_argument("sign only");
    for (; i < cell.size(); ++i)
      if (cell[i] < '0' || cell[i] > '9') throw std::invalid_argument("non-decimal");
    return Int(cell);
  } catch (const std::invalid_argument&) {
    fail(label, field, "cannot parse integer from \"" + cell + "\"");
  }
}

bool parse_bool(const std::string& label, const std::string& field, const std::string& cell) {
  return parse_int(label, field, cell) != 0;
}

// Normalized row with unknowns; shared by the tabular parser and the raw
// adapter so that validation logic exists exactly once.
struct RawRow {
  std::string label;
  std::optional<long> g;
  std::optional<Int> q;
  std::optional<long> p, r;
  std::optional<Int> s, t, u;
  std::optional<int> p_rank, factor_count;
  std::optional<bool> hyp_jacobian, jacobian;
};

std::optional<IsogenyRecord> validate_row(const RawRow& row, const IngestOptions& opts,
                                          long& skipped) {
  if (row.label.empty()) throw std::runtime_error("record with empty label");
  DecodedLabel dec;
  try {
    dec = decode_label(row.label);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("record \"") + row.label + "\": " + e.what());
  }
  if (row.g && *row.g != dec.g) fail(row.label, "g", "does not match label");
  if (dec.g != 3) {
    ++skipped;
    return std::nullopt;
  }
  if (row.q && *row.q != dec.q) fail(row.label, "q", "does not match label");

  IsogenyRecord rec;
  rec.label = row.label;
  rec.g = 3;
  FieldParams field;
  try {
    field = FieldParams::from_q(dec.q);
  } catch (const std::invalid_argument&) {
    fail(row.label, "q", dec.q.get_str() + " is not a prime power");
  }
  if (row.p && *row.p != field.p) fail(row.label, "p", "does not match q");
  if (row.r && *row.r != field.r) fail(row.label, "r", "does not match q");

  rec.coeffs = WeilCoeffs{field, dec.coeffs[0], dec.coeffs[1], dec.coeffs[2]};
  if (row.s && *row.s != rec.coeffs.s) fail(row.label, "s", "does not match label");
  if (row.t && *row.t != rec.coeffs.t) fail(row.label, "t", "does not match label");
  if (row.u && *row.u != rec.coeffs.u) fail(row.label, "u", "does not match label");
  if (!is_weil_root_locus(rec.coeffs))
    fail(row.label, "s/t/u", "coefficients fail the root-locus test");

  Profile pr = make_profile(rec.coeffs);
  rec.p_rank = pr.p_rank;
  rec.factor_count = factor_count_of(pr.shape, opts.factor_convention);
  if (row.p_rank && *row.p_rank != rec.p_rank)
    fail(row.label, "p_rank",
         "source says " + std::to_string(*row.p_rank) + ", recomputed " +
             std::to_string(rec.p_rank));
  if (row.factor_count && *row.factor_count != rec.factor_count)
    fail(row.label, "factor_count",
         "source says " + std::to_string(*row.factor_count) + ", recomputed " +
             std::to_string(rec.factor_count));
  rec.hyp_jacobian = row.hyp_jacobian;
  rec.jacobian = row.jacobian;
  return rec;
}

}  // namespace

int factor_count_of(const FactorShape& shape, FactorConvention conv) {
  if (conv == FactorConvention::with_multiplicity || !shape.is_three_linear())
    return shape.factor_count();
  const auto& v = shape.three_linear();
  std::set<Int> distinct{v.alpha, v.beta, v.gamma};
  return static_cast<int>(distinct.size());
}

IngestResult parse_records(std::istream& in, const IngestOptions& opts) {
  std::string line;
  if (!std::getline(in, line)) return {};  // empty file -> empty stream
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto header = split_csv_line(line);
  if (header != kColumns) {
    std::string want;
    for (const auto& c : kColumns) want += (want.empty() ? "" : ",") + c;
    throw std::runtime_error("bad header: expected \"" + want + "\", got \"" + line + "\"");
  }

  IngestResult out;
  long lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    if (cells.size() != kColumns.size())
      throw std::runtime_error("line " + std::to_string(lineno) + ": expected " +
                               std::to_string(kColumns.size()) + " cells, got " +
                               std::to_string(cells.size()));
    RawRow row;
    row.label = cells[0];
    auto opt_int = [&](int i) -> std::optional<Int> {
      if (cells[i].empty()) return std::nullopt;
      return parse_int(row.label, kColumns[i], cells[i]);
    };
    if (auto v = opt_int(1)) row.q = *v;
    if (auto v = opt_int(2)) row.p = v->get_si();
    if (auto v = opt_int(3)) row.r = v->get_si();
    row.s = opt_int(4);
    row.t = opt_int(5);
    row.u = opt_int(6);
    if (auto v = opt_int(7)) row.p_rank = static_cast<int>(v->get_si());
    if (auto v = opt_int(8)) row.factor_count = static_cast<int>(v->get_si());
    if (!cells[9].empty()) row.hyp_jacobian = parse_bool(row.label, "hyp_jacobian", cells[9]);
    if (!cells[10].empty()) row.jacobian = parse_bool(row.label, "jacobian", cells[10]);

    if (auto rec = validate_row(row, opts, out.skipped_other_genus))
      out.records.push_back(std::move(*rec));
  }
  return out;
}

IngestResult parse_records_file(const std::string& path, const IngestOptions& opts) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_records(in, opts);
}

// ---------------------------------------------------------------------------
// Raw-export adapter.

IngestResult parse_raw_export(std::istream& in,
                              const std::map<std::string, std::string>& field_map,
                              const IngestOptions& opts) {
  using json = nlohmann::json;

  // Accept either a single JSON array or one JSON object per line.
  std::vector<json> objects;
  std::string first_line;
  std::getline(in, first_line);
  std::string rest((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::string all = first_line + "\n" + rest;
  size_t start = all.find_first_not_of(" \t\r\n");
  if (start != std::string::npos && all[start] == '[') {
    json arr = json::parse(all);
    for (auto& o : arr) objects.push_back(std::move(o));
  } else {
    std::istringstream lines(all);
    std::string line;
    while (std::getline(lines, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      objects.push_back(json::parse(line));
    }
  }

  auto mapped = [&](const json& obj, const char* col) -> const json* {
    auto it = field_map.find(col);
    if (it == field_map.end()) return nullptr;
    auto jt = obj.find(it->second);
    if (jt == obj.end() || jt->is_null()) return nullptr;
    return &*jt;
  };
  auto as_int = [](const json& v, const std::string& label, const char* col) -> Int {
    if (v.is_number_integer()) return Int(static_cast<long>(v.get<long long>()));
    if (v.is_string()) return parse_int(label, col, v.get<std::string>());
    fail(label, col, "unsupported JSON type");
  };

  IngestResult out;
  for (const json& obj : objects) {
    RawRow row;
    if (const json* v = mapped(obj, "label")) row.label = v->get<std::string>();
    if (const json* v = mapped(obj, "g")) row.g = as_int(*v, row.label, "g").get_si();
    if (const json* v = mapped(obj, "q")) row.q = as_int(*v, row.label, "q");
    if (const json* v = mapped(obj, "coeffs")) {
      if (!v->is_array() || v->size() < 3) fail(row.label, "coeffs", "need at least [s,t,u]");
      row.s = as_int((*v)[0], row.label, "s");
      row.t = as_int((*v)[1], row.label, "t");
      row.u = as_int((*v)[2], row.label, "u");
    }
    if (const json* v = mapped(obj, "s")) row.s = as_int(*v, row.label, "s");
    if (const json* v = mapped(obj, "t")) row.t = as_int(*v, row.label, "t");
    if (const json* v = mapped(obj, "u")) row.u = as_int(*v, row.label, "u");
    if (const json* v = mapped(obj, "p_rank"))
      row.p_rank = static_cast<int>(as_int(*v, row.label, "p_rank").get_si());
    if (const json* v = mapped(obj, "factor_count"))
      row.factor_count = static_cast<int>(as_int(*v, row.label, "factor_count").get_si());
    auto as_flag = [&](const json& v, const char* col) -> bool {
      if (v.is_boolean()) return v.get<bool>();
      return as_int(v, row.label, col) != 0;
    };
    if (const json* v = mapped(obj, "hyp_jacobian")) row.hyp_jacobian = as_flag(*v, "hyp_jacobian");
    if (const json* v = mapped(obj, "jacobian")) row.jacobian = as_flag(*v, "jacobian");

    if (auto rec = validate_row(row, opts, out.skipped_other_genus))
      out.records.push_back(std::move(*rec));
  }
  return out;
}

IngestResult parse_raw_export_file(const std::string& path, const std::string& adapter_path,
                                   const IngestOptions& opts) {
  std::ifstream adapter(adapter_path);
  if (!adapter) throw std::runtime_error("cannot open adapter " + adapter_path);
  nlohmann::json cfg = nlohmann::json::parse(adapter);
  std::map<std::string, std::string> field_map;
  for (auto it = cfg.begin(); it != cfg.end(); ++it)
    field_map[it.key()] = it.value().get<std::string>();
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_raw_export(in, field_map, opts);
}

void write_records(std::ostream& out, const std::vector<IsogenyRecord>& records) {
  out << "label,q,p,r,s,t,u,p_rank,factor_count,hyp_jacobian,jacobian\n";
  for (const auto& rec : records) {
    const FieldParams& f = rec.coeffs.field;
    out << rec.label << ',' << f.q.get_str() << ',' << f.p << ',' << f.r << ','
        << rec.coeffs.s.get_str() << ',' << rec.coeffs.t.get_str() << ','
        << rec.coeffs.u.get_str() << ',' << rec.p_rank << ',' << rec.factor_count << ',';
    if (rec.hyp_jacobian) out << (*rec.hyp_jacobian ? '1' : '0');
    out << ',';
    if (rec.jacobian) out << (*rec.jacobian ? '1' : '0');
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// Audit.

AuditReport audit(const std::vector<IsogenyRecord>& records, const RuleEngine& engine) {
  AuditReport rep;
  for (const auto& rule : engine.rules()) {
    rep.per_rule_hits[rule.id] = 0;
    rep.per_rule_unique_hits[rule.id] = 0;
  }
  for (const auto& rec : records) {
    ++rep.total;
    Verdict v = engine.classify(make_profile(rec.coeffs));
    for (const auto& id : v.fired) ++rep.per_rule_hits[id];
    if (v.fired.size() == 1) ++rep.per_rule_unique_hits[v.fired.front()];
    if (rec.hyp_jacobian) {
      ++rep.with_hyp_flag;
      if (*rec.hyp_jacobian && !v.fired.empty())
        rep.false_positives.emplace_back(rec.label, v.fired);
    }
  }
  return rep;
}

}  // namespace weil3
