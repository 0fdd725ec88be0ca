// weil3: classify degree-6 Weil polynomials against the hyperelliptic-Jacobian
// obstruction rules, ingest/audit labeled datasets, reproduce the census
// tables, and run exact large-q proportion sweeps.
//
// Exit codes: 0 success (classify: unobstructed), 2 classify found an
// obstruction, 3 invalid input, 4 audit found false positives, 5 regression
// tables mismatch the expected file.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "weil3/asymptotics.hpp"
#include "weil3/enumerate.hpp"
#include "weil3/ingest.hpp"
#include "weil3/label.hpp"
#include "weil3/stats.hpp"

using namespace weil3;
using nlohmann::ordered_json;

namespace {

constexpr int kOk = 0, kObstructed = 2, kInvalid = 3, kAuditFail = 4,
              kRegression = 5;

struct Interpretations {
  RuleOptions rules;
  Chi3Universe chi3 = Chi3Universe::ordinary;
  FactorConvention factors = FactorConvention::with_multiplicity;
  RFactor rfactor = RFactor::phi_over_q;
};

Interpretations parse_interpretations(const std::vector<std::string>& kvs) {
  Interpretations out;
  for (const auto& kv : kvs) {
    auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("--interpretation needs key=value, got \"" + kv +
                                  "\"");
    std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
    if (key == "pvq") {
      if (val == "p_times_r")
        out.rules.pvq = RuleOptions::Pvq::p_times_r;
      else if (val == "two_sqrt_q")
        out.rules.pvq = RuleOptions::Pvq::two_sqrt_q;
      else
        throw std::invalid_argument("pvq must be p_times_r or two_sqrt_q");
    } else if (key == "type_eval") {
      if (val == "split_root")
        out.rules.type_eval = RuleOptions::TypeEval::split_root;
      else if (val == "literal_plus")
        out.rules.type_eval = RuleOptions::TypeEval::literal_plus;
      else
        throw std::invalid_argument("type_eval must be split_root or literal_plus");
    } else if (key == "chi3") {
      if (val == "ordinary")
        out.chi3 = Chi3Universe::ordinary;
      else if (val == "root_locus")
        out.chi3 = Chi3Universe::root_locus;
      else
        throw std::invalid_argument("chi3 must be ordinary or root_locus");
    } else if (key == "factors") {
      if (val == "multiplicity")
        out.factors = FactorConvention::with_multiplicity;
      else if (val == "distinct")
        out.factors = FactorConvention::distinct;
      else
        throw std::invalid_argument("factors must be multiplicity or distinct");
    } else if (key == "rfactor") {
      if (val == "phi_over_q")
        out.rfactor = RFactor::phi_over_q;
      else if (val == "one")
        out.rfactor = RFactor::one;
      else
        throw std::invalid_argument("rfactor must be phi_over_q or one");
    } else {
      throw std::invalid_argument("unknown interpretation key \"" + key + "\"");
    }
  }
  return out;
}

std::string abs_str(const Int& v) { return Int(abs(v)).get_str(); }

std::string signed_term(const Int& v, const std::string& var) {
  if (v == 0) return "";
  std::string coeff = (v == 1 || v == -1) ? "" : abs_str(v);
  return (sgn(v) < 0 ? " - " : " + ") + coeff + var;
}

std::string cubic_str(const RealCubic& g) {
  std::string out = "y^3" + signed_term(g.a, "y^2") + signed_term(g.b, "y");
  if (g.c != 0) out += (sgn(g.c) < 0 ? " - " : " + ") + abs_str(g.c);
  return out;
}

std::string linear_str(const Int& alpha) {
  if (alpha == 0) return "y";
  return "(y" + std::string(sgn(alpha) < 0 ? " - " : " + ") + abs_str(alpha) + ")";
}

std::string shape_str(const FactorShape& shape) {
  if (shape.is_three_linear()) {
    const auto& tl = shape.three_linear();
    return linear_str(tl.alpha) + linear_str(tl.beta) + linear_str(tl.gamma);
  }
  if (shape.factor_count() == 2) {
    const auto& lq = shape.linear_quadratic();
    return linear_str(lq.alpha) + "(y^2" + signed_term(lq.delta, "y") +
           (lq.eps == 0 ? ""
                        : (sgn(lq.eps) < 0 ? " - " : " + ") + abs_str(lq.eps)) +
           ")";
  }
  return "irreducible";
}

std::string slopes_str(const std::vector<Slope>& slopes) {
  std::string out;
  for (const auto& s : slopes) {
    if (!out.empty()) out += " ";
    out += to_string(s);
  }
  return out;
}

const Rule& rule_by_id(const RuleEngine& engine, const std::string& id) {
  for (const auto& r : engine.rules())
    if (r.id == id) return r;
  throw std::logic_error("unknown rule id " + id);
}

// ---------------------------------------------------------------------------
// classify

WeilCoeffs coeffs_from_token(const std::string& token) {
  if (token.find(',') != std::string::npos) {
    std::vector<std::string> parts;
    std::istringstream in(token);
    for (std::string cell; std::getline(in, cell, ',');) parts.push_back(cell);
    if (parts.size() != 4)
      throw std::invalid_argument("coefficient input needs q,s,t,u");
    try {
      return {FieldParams::from_q(Int(parts[0])), Int(parts[1]), Int(parts[2]),
              Int(parts[3])};
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception&) {  // mpz parse failure
      throw std::invalid_argument("coefficient input needs four integers q,s,t,u");
    }
  }
  DecodedLabel dec = decode_label(token);
  if (dec.g != 3 || dec.coeffs.size() != 3)
    throw std::invalid_argument("label \"" + token + "\" is not 3-dimensional");
  return {FieldParams::from_q(dec.q), dec.coeffs[0], dec.coeffs[1], dec.coeffs[2]};
}

int run_classify(const std::string& input, const std::string& format,
                 const Interpretations& interp) {
  std::vector<std::string> tokens;
  if (std::filesystem::is_regular_file(input)) {
    std::ifstream in(input);
    for (std::string line; std::getline(in, line);)
      if (!line.empty()) tokens.push_back(line);
  } else {
    tokens.push_back(input);
  }

  RuleEngine engine(interp.rules);
  bool any_obstructed = false;
  ordered_json jout = ordered_json::array();
  if (format == "csv")
    std::cout << "label,q,s,t,u,factor_count,p_rank,ordinary,fired,obstructed\n";

  for (const auto& token : tokens) {
    WeilCoeffs w = coeffs_from_token(token);
    if (!is_weil_root_locus(w))
      throw std::invalid_argument(
          "input \"" + token + "\" fails the root-locus test (not a Weil polynomial)");
    Profile pr = make_profile(w);
    Verdict v = engine.classify(pr);
    any_obstructed = any_obstructed || v.obstructed;
    std::string label =
        encode_label(3, w.field.q, {w.s, w.t, w.u});
    int fc = factor_count_of(pr.shape, interp.factors);

    if (format == "md") {
      std::cout << "label: " << label << "\n";
      std::cout << "field: q = " << w.field.q.get_str() << " = " << w.field.p << "^"
                << w.field.r << "\n";
      std::cout << "coefficients: s = " << w.s.get_str() << ", t = " << w.t.get_str()
                << ", u = " << w.u.get_str() << "\n";
      std::cout << "real cubic: " << cubic_str(pr.real) << " = "
                << shape_str(pr.shape) << "\n";
      std::cout << "slopes: " << slopes_str(pr.slopes) << "  (p-rank " << pr.p_rank
                << (pr.ordinary ? ", ordinary" : "") << ")\n";
      if (pr.splits_further) std::cout << "splits further over the integers\n";
      if (v.fired.empty()) {
        std::cout << "fired: (none)\nverdict: unobstructed\n";
      } else {
        std::cout << "fired:\n";
        for (const auto& id : v.fired) {
          const Rule& r = rule_by_id(engine, id);
          std::cout << "  " << id << " [" << to_string(r.provenance) << "] "
                    << r.condition << "\n";
        }
        std::cout << "verdict: obstructed\n";
      }
      if (v.advisory) std::cout << "advisory: " << *v.advisory << "\n";
      std::cout << "\n";
    } else if (format == "csv") {
      std::string fired;
      for (const auto& id : v.fired) fired += (fired.empty() ? "" : ";") + id;
      std::cout << label << "," << w.field.q.get_str() << "," << w.s.get_str() << ","
                << w.t.get_str() << "," << w.u.get_str() << "," << fc << ","
                << pr.p_rank << "," << (pr.ordinary ? 1 : 0) << "," << fired << ","
                << (v.obstructed ? 1 : 0) << "\n";
    } else {  // json
      ordered_json fired = ordered_json::array();
      for (const auto& id : v.fired) {
        const Rule& r = rule_by_id(engine, id);
        fired.push_back({{"id", id},
                         {"provenance", to_string(r.provenance)},
                         {"condition", r.condition}});
      }
      ordered_json slopes = ordered_json::array();
      for (const auto& s : pr.slopes) slopes.push_back(to_string(s));
      ordered_json entry = {
          {"label", label},
          {"q", w.field.q.get_str()},
          {"p", w.field.p},
          {"r", w.field.r},
          {"s", w.s.get_str()},
          {"t", w.t.get_str()},
          {"u", w.u.get_str()},
          {"real_cubic",
           {{"a", pr.real.a.get_str()},
            {"b", pr.real.b.get_str()},
            {"c", pr.real.c.get_str()}}},
          {"factorization", shape_str(pr.shape)},
          {"factor_count", fc},
          {"slopes", slopes},
          {"p_rank", pr.p_rank},
          {"ordinary", pr.ordinary},
          {"splits_further", pr.splits_further},
          {"fired", fired},
          {"obstructed", v.obstructed}};
      if (v.advisory) entry["advisory"] = *v.advisory;
      jout.push_back(entry);
    }
  }
  if (format == "json")
    std::cout << (jout.size() == 1 ? jout[0].dump(2) : jout.dump(2)) << "\n";
  return any_obstructed ? kObstructed : kOk;
}

// ---------------------------------------------------------------------------
// ingest

IngestResult load_records(const std::string& input, const std::string& adapter,
                          const Interpretations& interp) {
  IngestOptions opts;
  opts.factor_convention = interp.factors;
  if (!adapter.empty()) return parse_raw_export_file(input, adapter, opts);
  return parse_records_file(input, opts);
}

int run_ingest(const std::string& input, const std::string& adapter,
               const std::string& output, const std::string& format,
               const Interpretations& interp) {
  IngestResult res = load_records(input, adapter, interp);
  if (!output.empty()) {
    std::ofstream out(output);
    if (!out) throw std::runtime_error("cannot write " + output);
    write_records(out, res.records);
  }
  std::map<Int, long> per_q;
  for (const auto& rec : res.records) ++per_q[rec.coeffs.field.q];
  if (format == "json") {
    ordered_json jq = ordered_json::object();
    for (const auto& [q, n] : per_q) jq[q.get_str()] = n;
    ordered_json j = {{"records", res.records.size()},
                      {"skipped_other_genus", res.skipped_other_genus},
                      {"per_q", jq}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "records: " << res.records.size() << "\n";
    std::cout << "skipped_other_genus: " << res.skipped_other_genus << "\n";
    for (const auto& [q, n] : per_q)
      std::cout << "q=" << q.get_str() << ": " << n << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// audit

int run_audit(const std::string& input, const std::string& adapter,
              const std::string& format, const Interpretations& interp) {
  IngestResult res = load_records(input, adapter, interp);
  RuleEngine engine(interp.rules);
  AuditReport rep = audit(res.records, engine);
  if (format == "json") {
    ordered_json fps = ordered_json::array();
    for (const auto& [label, fired] : rep.false_positives)
      fps.push_back({{"label", label}, {"fired", fired}});
    ordered_json j = {{"total", rep.total},
                      {"with_hyp_flag", rep.with_hyp_flag},
                      {"false_positives", fps},
                      {"per_rule_hits", rep.per_rule_hits},
                      {"per_rule_unique_hits", rep.per_rule_unique_hits}};
    std::cout << j.dump(2) << "\n";
  } else if (format == "csv") {
    std::cout << "rule,hits,unique_hits\n";
    for (const auto& [id, hits] : rep.per_rule_hits)
      std::cout << id << "," << hits << "," << rep.per_rule_unique_hits.at(id)
                << "\n";
    for (const auto& [label, fired] : rep.false_positives) {
      std::cout << "false_positive," << label << ",";
      for (size_t i = 0; i < fired.size(); ++i)
        std::cout << (i ? ";" : "") << fired[i];
      std::cout << "\n";
    }
  } else {
    std::cout << "records: " << rep.total << " (" << rep.with_hyp_flag
              << " with ground-truth flag)\n";
    std::cout << "| rule | hits | unique hits |\n|---|---:|---:|\n";
    for (const auto& [id, hits] : rep.per_rule_hits)
      std::cout << "| " << id << " | " << hits << " | "
                << rep.per_rule_unique_hits.at(id) << " |\n";
    if (rep.false_positives.empty()) {
      std::cout << "\nno false positives\n";
    } else {
      std::cout << "\nfalse positives (rules fired on flagged hyperelliptic "
                   "classes):\n";
      for (const auto& [label, fired] : rep.false_positives) {
        std::cout << "  " << label << ":";
        for (const auto& id : fired) std::cout << " " << id;
        std::cout << "\n";
      }
    }
  }
  return rep.false_positives.empty() ? kOk : kAuditFail;
}

// ---------------------------------------------------------------------------
// stats

int run_stats(const std::string& input, const std::string& adapter,
              const std::string& expect, const std::string& format, bool overlap,
              bool delta, const Interpretations& interp) {
  IngestResult res = load_records(input, adapter, interp);
  RuleEngine engine(interp.rules);
  CensusTables tables = census(res.records, engine);

  TableFormat tf = format == "json"  ? TableFormat::json
                   : format == "csv" ? TableFormat::csv
                                     : TableFormat::md;
  std::cout << render_census(tables, tf);
  if (overlap) std::cout << "\n" << render_overlap(overlap_matrix(res.records, engine), engine, tf);
  if (delta) std::cout << "\n" << delta_report(tables);

  if (!expect.empty()) {
    std::ifstream in(expect);
    if (!in) throw std::runtime_error("cannot open expected-census file " + expect);
    CensusTables want = parse_census_csv(in);
    auto mismatches = compare_census(tables, want);
    if (!mismatches.empty()) {
      std::cerr << "regression mismatches against " << expect << ":\n";
      for (const auto& m : mismatches) std::cerr << "  " << m << "\n";
      return kRegression;
    }
    std::cerr << "census matches " << expect << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// enumerate

int run_enumerate(const std::string& q_str, const std::string& admissibility,
                  const std::string& input, const std::string& adapter,
                  bool count_only, const std::string& format, int jobs,
                  const Interpretations& interp) {
  FieldParams field = FieldParams::from_q(Int(q_str));
  std::vector<WeilCoeffs> triples;
  if (admissibility == "dataset") {
    if (input.empty())
      throw std::invalid_argument("--admissibility dataset needs --input records");
    IngestResult res = load_records(input, adapter, interp);
    triples = dataset_coeffs(res.records, field);
  } else if (admissibility != "root_locus") {
    throw std::invalid_argument("--admissibility must be root_locus or dataset");
  }

  if (count_only) {
    Int n = admissibility == "dataset" ? Int(static_cast<long>(triples.size()))
                                       : count_valid(field, jobs);
    if (format == "json") {
      ordered_json j = {{"q", field.q.get_str()},
                        {"admissibility", admissibility},
                        {"count", n.get_str()}};
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << n.get_str() << "\n";
    }
    return kOk;
  }

  auto emit_csv = [&](const WeilCoeffs& w) {
    Profile pr = make_profile(w);
    std::cout << encode_label(3, w.field.q, {w.s, w.t, w.u}) << ","
              << w.field.q.get_str() << "," << w.field.p << "," << w.field.r << ","
              << w.s.get_str() << "," << w.t.get_str() << "," << w.u.get_str() << ","
              << pr.p_rank << "," << factor_count_of(pr.shape, interp.factors)
              << "\n";
  };
  ordered_json jout = ordered_json::array();
  auto emit_json = [&](const WeilCoeffs& w) {
    Profile pr = make_profile(w);
    jout.push_back({{"label", encode_label(3, w.field.q, {w.s, w.t, w.u})},
                    {"q", w.field.q.get_str()},
                    {"s", w.s.get_str()},
                    {"t", w.t.get_str()},
                    {"u", w.u.get_str()},
                    {"p_rank", pr.p_rank},
                    {"factor_count", factor_count_of(pr.shape, interp.factors)}});
  };
  bool json = format == "json";
  if (!json) std::cout << "label,q,p,r,s,t,u,p_rank,factor_count\n";
  std::function<void(const WeilCoeffs&)> emit = emit_csv;
  if (json) emit = emit_json;
  if (admissibility == "dataset") {
    for (const auto& w : triples) emit(w);
  } else {
    for_each_valid(field, emit);
  }
  if (json) std::cout << jout.dump(2) << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// asymptotics

int run_asymptotics(const std::vector<std::string>& q_list, long qmax, bool odd,
                    bool even, const std::string& records_path,
                    const std::string& adapter, const std::string& format,
                    int jobs, const Interpretations& interp) {
  std::vector<Int> qs;
  if (odd)
    for (long n = 3; n <= qmax; n += 2)
      if (is_prime(n)) qs.push_back(n);
  if (even)
    for (Int q = 2; q <= qmax; q *= 2) qs.push_back(q);
  for (const auto& q : q_list) qs.push_back(Int(q));
  if (qs.empty())
    throw std::invalid_argument(
        "asymptotics: give --q values or --odd/--even with --qmax");
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());

  std::vector<AsymptoticsRow> rows;
  for (const auto& q : qs)
    rows.push_back(asymptotics_row(FieldParams::from_q(q), interp.chi3,
                                   interp.rfactor, jobs));

  if (records_path.empty()) {
    std::cout << render_asymptotics(rows, format);
    return kOk;
  }

  // With --records: append records-sourced columns where data exists.
  IngestResult res = load_records(records_path, adapter, interp);
  std::istringstream base(render_asymptotics(rows, "csv"));
  if (format != "csv")
    throw std::invalid_argument("--records comparison is csv-only");
  std::string line;
  std::getline(base, line);
  std::cout << line << ",chi3_records,pi3\n";
  for (const auto& row : rows) {
    std::getline(base, line);
    std::cout << line << ",";
    auto field = FieldParams::from_q(row.q);
    try {
      Rat c = chi3_records(res.records, field);
      std::cout << c.get_num().get_str() << "/" << c.get_den().get_str();
    } catch (const std::runtime_error&) {
    }
    std::cout << ",";
    try {
      Rat p = pi3(res.records, field);
      std::cout << p.get_num().get_str() << "/" << p.get_den().get_str();
    } catch (const std::runtime_error&) {
    }
    std::cout << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// rules

int run_rules(const std::string& format) {
  RuleEngine engine;
  if (format == "json") {
    ordered_json j = ordered_json::array();
    for (const auto& r : engine.rules()) {
      ordered_json pr = ordered_json::array();
      for (int p : r.p_ranks) pr.push_back(p);
      j.push_back({{"id", r.id},
                   {"parity", to_string(r.parity)},
                   {"factors", r.factors ? ordered_json(*r.factors)
                                         : ordered_json(nullptr)},
                   {"p_ranks", pr},
                   {"other_gate", r.other_gate},
                   {"condition", r.condition},
                   {"provenance", to_string(r.provenance)}});
    }
    std::cout << j.dump(2) << "\n";
  } else if (format == "csv") {
    std::cout << "id,parity,factors,p_ranks,other_gate,condition,provenance\n";
    for (const auto& r : engine.rules()) {
      std::string pr;
      for (int p : r.p_ranks) pr += (pr.empty() ? "" : ";") + std::to_string(p);
      std::cout << r.id << "," << to_string(r.parity) << ","
                << (r.factors ? std::to_string(*r.factors) : "") << "," << pr
                << ",\"" << r.other_gate << "\",\"" << r.condition << "\","
                << to_string(r.provenance) << "\n";
    }
  } else {
    std::cout << "| rule | parity | factors | p-ranks | other gate | condition | "
                 "provenance |\n|---|---|---|---|---|---|---|\n";
    for (const auto& r : engine.rules()) {
      std::string pr;
      for (int p : r.p_ranks) pr += (pr.empty() ? "" : ",") + std::to_string(p);
      std::cout << "| " << r.id << " | " << to_string(r.parity) << " | "
                << (r.factors ? std::to_string(*r.factors) : "any") << " | "
                << (pr.empty() ? "any" : pr) << " | "
                << (r.other_gate.empty() ? "-" : r.other_gate) << " | "
                << r.condition << " | " << to_string(r.provenance) << " |\n";
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"degree-6 Weil polynomial obstruction toolkit"};
  app.require_subcommand(1);

  std::vector<std::string> interp_kvs;
  app.add_option("--interpretation", interp_kvs,
                 "ambiguous-reading switches: pvq=, type_eval=, chi3=, factors=, "
                 "rfactor=")
      ->take_all();
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  app.add_option("--jobs", jobs, "worker threads for sweeps");

  auto* c_classify = app.add_subcommand(
      "classify", "decide obstructions for a label, \"q,s,t,u\", or file of such");
  std::string cl_input, cl_format = "md";
  c_classify->add_option("input", cl_input)->required();
  c_classify->add_option("--format", cl_format)
      ->check(CLI::IsMember({"csv", "json", "md"}));

  auto* c_ingest =
      app.add_subcommand("ingest", "normalize a dataset; validate every row");
  std::string in_input, in_adapter, in_output, in_format = "md";
  c_ingest->add_option("--input", in_input)->required();
  c_ingest->add_option("--adapter", in_adapter,
                       "field-map JSON for raw exports (input then parsed as "
                       "JSON/JSONL)");
  c_ingest->add_option("--output", in_output, "write normalized csv here");
  c_ingest->add_option("--format", in_format)
      ->check(CLI::IsMember({"csv", "json", "md"}));

  auto* c_audit = app.add_subcommand(
      "audit", "rule soundness over flagged records; exit 4 on false positives");
  std::string au_input, au_adapter, au_format = "md";
  c_audit->add_option("--input", au_input)->required();
  c_audit->add_option("--adapter", au_adapter);
  c_audit->add_option("--format", au_format)
      ->check(CLI::IsMember({"csv", "json", "md"}));

  auto* c_stats = app.add_subcommand(
      "stats", "census tables; exit 5 when --expect mismatches");
  std::string st_input, st_adapter, st_expect, st_format = "csv";
  bool st_overlap = false, st_delta = false;
  c_stats->add_option("--input", st_input)->required();
  c_stats->add_option("--adapter", st_adapter);
  c_stats->add_option("--expect", st_expect, "expected-census csv to compare");
  c_stats->add_option("--format", st_format)
      ->check(CLI::IsMember({"csv", "json", "md"}));
  c_stats->add_flag("--overlap", st_overlap, "also print the co-firing matrix");
  c_stats->add_flag("--delta", st_delta,
                    "also cross-check hits against the bundled summary counts");

  auto* c_enum = app.add_subcommand("enumerate",
                                    "stream or count the locus triples for one q");
  std::string en_q, en_adm = "root_locus", en_input, en_adapter, en_format = "csv";
  bool en_count = false;
  c_enum->add_option("--q", en_q)->required();
  c_enum->add_option("--admissibility", en_adm)
      ->check(CLI::IsMember({"root_locus", "dataset"}));
  c_enum->add_option("--input", en_input, "records for dataset admissibility");
  c_enum->add_option("--adapter", en_adapter);
  c_enum->add_flag("--count", en_count, "print the cardinality only");
  c_enum->add_option("--format", en_format)->check(CLI::IsMember({"csv", "json"}));

  auto* c_asym = app.add_subcommand(
      "asymptotics", "exact chi3 / nonordinary sweep and predicted counts");
  std::vector<std::string> as_q;
  long as_qmax = 0;
  bool as_odd = false, as_even = false;
  std::string as_records, as_adapter, as_format = "csv";
  c_asym->add_option("--q", as_q, "explicit prime powers")->take_all();
  c_asym->add_option("--qmax", as_qmax);
  c_asym->add_flag("--odd", as_odd, "odd primes up to --qmax");
  c_asym->add_flag("--even", as_even, "powers of two up to --qmax");
  c_asym->add_option("--records", as_records,
                     "append records-sourced chi3/pi3 columns (csv only)");
  c_asym->add_option("--adapter", as_adapter);
  c_asym->add_option("--format", as_format)
      ->check(CLI::IsMember({"csv", "json", "md"}));

  auto* c_rules = app.add_subcommand("rules", "print the obstruction registry");
  std::string ru_format = "md";
  c_rules->add_option("--format", ru_format)
      ->check(CLI::IsMember({"csv", "json", "md"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  try {
    Interpretations interp = parse_interpretations(interp_kvs);
    if (*c_classify) return run_classify(cl_input, cl_format, interp);
    if (*c_ingest)
      return run_ingest(in_input, in_adapter, in_output, in_format, interp);
    if (*c_audit) return run_audit(au_input, au_adapter, au_format, interp);
    if (*c_stats)
      return run_stats(st_input, st_adapter, st_expect, st_format, st_overlap,
                       st_delta, interp);
    if (*c_enum)
      return run_enumerate(en_q, en_adm, en_input, en_adapter, en_count, en_format,
                           jobs, interp);
    if (*c_asym)
      return run_asymptotics(as_q, as_qmax, as_odd, as_even, as_records,
                             as_adapter, as_format, jobs, interp);
    if (*c_rules) return run_rules(ru_format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kOk;
}
