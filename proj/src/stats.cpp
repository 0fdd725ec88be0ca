#include "weil3/stats.hpp"

#include <json.hpp>

#include <array>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace weil3 {

namespace {

// Rendering order for categories: factors descending, p-rank ascending.
std::vector<CategoryKey> category_order() {
  std::vector<CategoryKey> keys;
  for (int f = 3; f >= 1; --f)
    for (int p = 0; p <= 3; ++p) keys.push_back({f, p});
  return keys;
}

std::string category_name(const CategoryKey& k) {
  return std::to_string(k.factor_count) + "." + std::to_string(k.p_rank);
}

std::string format_scaled(long q) {
  std::string frac = std::to_string(q % 10000);
  return std::to_string(q / 10000) + "." + std::string(4 - frac.size(), '0') + frac;
}

}  // namespace

std::string ratio4(long a, long b) {
  long scaled = a * 10000;
  long q = scaled / b, r = scaled % b;
  if (2 * r > b || (2 * r == b && q % 2 != 0)) ++q;
  return format_scaled(q);
}

std::string ratio4_trunc(long a, long b) { return format_scaled(a * 10000 / b); }

CensusTables census(const std::vector<IsogenyRecord>& records,
                    const RuleEngine& engine) {
  CensusTables out;
  for (const auto& rule : engine.rules()) out.table2[rule.id];
  for (int f = 1; f <= 3; ++f)
    for (int p = 0; p <= 3; ++p) out.table3[{f, p}];

  for (const auto& rec : records) {
    Verdict v = engine.classify(rec.coeffs);
    for (const auto& id : v.fired) {
      auto& cell = out.table2[id];
      ++cell.hits;
      if (v.fired.size() == 1) ++cell.unique_hits;
    }
    if (rec.hyp_jacobian && !*rec.hyp_jacobian) {
      auto& row = out.table3[{rec.factor_count, rec.p_rank}];
      ++row.total;
      ++out.total.total;
      if (v.fired.empty()) {
        ++row.undetected;
        ++out.total.undetected;
      }
    }
  }
  return out;
}

OverlapMatrix overlap_matrix(const std::vector<IsogenyRecord>& records,
                             const RuleEngine& engine) {
  OverlapMatrix m;
  for (const auto& rec : records) {
    Verdict v = engine.classify(rec.coeffs);
    for (size_t i = 0; i < v.fired.size(); ++i)
      for (size_t j = i; j < v.fired.size(); ++j) {
        ++m[{v.fired[i], v.fired[j]}];
        if (i != j) ++m[{v.fired[j], v.fired[i]}];
      }
  }
  return m;
}

std::string render_census(const CensusTables& tables, TableFormat format) {
  std::ostringstream out;
  switch (format) {
    case TableFormat::csv: {
      out << "kind,key,n1,n2,ratio\n";
      for (const auto& [id, cell] : tables.table2)
        out << "rule," << id << "," << cell.hits << "," << cell.unique_hits << ",\n";
      for (const auto& key : category_order()) {
        const auto& row = tables.table3.at(key);
        out << "category," << category_name(key) << "," << row.undetected << ","
            << row.total << ","
            << (row.total ? ratio4(row.undetected, row.total) : "") << "\n";
      }
      out << "total,," << tables.total.undetected << "," << tables.total.total << ","
          << (tables.total.total ? ratio4(tables.total.undetected, tables.total.total)
                                 : "")
          << "\n";
      break;
    }
    case TableFormat::json: {
      nlohmann::ordered_json j;
      for (const auto& [id, cell] : tables.table2)
        j["rules"][id] = {{"hits", cell.hits}, {"unique_hits", cell.unique_hits}};
      j["categories"] = nlohmann::ordered_json::array();
      for (const auto& key : category_order()) {
        const auto& row = tables.table3.at(key);
        nlohmann::ordered_json c = {{"factors", key.factor_count},
                                    {"p_rank", key.p_rank},
                                    {"undetected", row.undetected},
                                    {"total", row.total}};
        if (row.total) c["ratio"] = ratio4(row.undetected, row.total);
        j["categories"].push_back(c);
      }
      j["total"] = {{"undetected", tables.total.undetected},
                    {"total", tables.total.total}};
      if (tables.total.total)
        j["total"]["ratio"] = ratio4(tables.total.undetected, tables.total.total);
      out << j.dump(2) << "\n";
      break;
    }
    case TableFormat::md: {
      out << "| Rule | hits | unique hits |\n|---|---:|---:|\n";
      for (const auto& [id, cell] : tables.table2)
        out << "| " << id << " | " << cell.hits << " | " << cell.unique_hits
            << " |\n";
      out << "\n| type | undetected | ratio |\n|---|---:|---:|\n";
      std::vector<std::string> trunc_notes;
      auto emit = [&](const std::string& name, const RatioPair& row) {
        out << "| " << name << " | " << row.undetected << "/" << row.total << " | ";
        if (row.total) {
          std::string rounded = ratio4(row.undetected, row.total);
          out << rounded;
          if (std::string t = ratio4_trunc(row.undetected, row.total); t != rounded)
            trunc_notes.push_back(name + " " + rounded + " (truncated: " + t + ")");
        }
        out << " |\n";
      };
      for (const auto& key : category_order())
        emit("(" + std::to_string(key.factor_count) + ", " +
                 std::to_string(key.p_rank) + ")",
             tables.table3.at(key));
      emit("**Total**", tables.total);
      if (!trunc_notes.empty()) {
        out << "\nRatios are rounded half-even; truncation would differ for:";
        for (const auto& n : trunc_notes) out << " " << n << ";";
        out << "\n";
      }
      break;
    }
  }
  return out.str();
}

std::string render_overlap(const OverlapMatrix& matrix, const RuleEngine& engine,
                           TableFormat format) {
  std::vector<std::string> ids;
  for (const auto& rule : engine.rules()) ids.push_back(rule.id);
  std::sort(ids.begin(), ids.end());
  auto at = [&](const std::string& x, const std::string& y) {
    auto it = matrix.find({x, y});
    return it == matrix.end() ? 0L : it->second;
  };
  std::ostringstream out;
  switch (format) {
    case TableFormat::csv:
      out << "rule";
      for (const auto& id : ids) out << "," << id;
      out << "\n";
      for (const auto& x : ids) {
        out << x;
        for (const auto& y : ids) out << "," << at(x, y);
        out << "\n";
      }
      break;
    case TableFormat::json: {
      nlohmann::ordered_json j;
      for (const auto& x : ids)
        for (const auto& y : ids) j[x][y] = at(x, y);
      out << j.dump(2) << "\n";
      break;
    }
    case TableFormat::md:
      out << "| rule |";
      for (const auto& id : ids) out << " " << id << " |";
      out << "\n|---|";
      for (size_t i = 0; i < ids.size(); ++i) out << "---:|";
      out << "\n";
      for (const auto& x : ids) {
        out << "| " << x << " |";
        for (const auto& y : ids) out << " " << at(x, y) << " |";
        out << "\n";
      }
      break;
  }
  return out.str();
}

const std::map<std::string, long>& summary_isogeny_counts() {
  static const std::map<std::string, long> counts = {
      {"0.2.2.0", 42},    {"0.3.1.0", 32},    {"0.3.2.0", 90},
      {"0.3.2.1", 24},    {"0.3.2.2", 24},    {"0.N.0.0", 164},
      {"0.N.N.0", 33370}, {"1.1.0.0", 6},     {"1.1.0.1", 34},
      {"1.2.1.0", 52},    {"1.2.2.0", 136},   {"1.3.1.0", 38},
      {"1.3.1.1", 24},    {"1.3.2.0", 64},    {"1.3.2.1", 8},
      {"1.3.N.0", 78},    {"1.3.N.1", 68},    {"1.N.N.0", 245548},
      {"N.3.0.0", 47},    {"N.3.0.1", 50},    {"N.3.N.0", 78},
      {"N.N.N.0", 1422},  {"N.N.N.1", 4187},  {"N.N.N.2", 2328}};
  return counts;
}

std::string delta_report(const CensusTables& tables) {
  const auto& summary = summary_isogeny_counts();
  std::ostringstream out;
  long matches = 0;
  std::vector<std::string> deltas;
  for (const auto& [id, cell] : tables.table2) {
    auto it = summary.find(id);
    if (it == summary.end()) continue;
    if (it->second == cell.hits) {
      ++matches;
    } else {
      long d = cell.hits - it->second;
      deltas.push_back("  " + id + ": summary " + std::to_string(it->second) +
                       ", recounted " + std::to_string(cell.hits) + " (delta " +
                       (d >= 0 ? "+" : "") + std::to_string(d) + ")");
    }
  }
  out << "summary-column cross-check: " << matches << " of "
      << (matches + static_cast<long>(deltas.size()))
      << " rule counts match the recounted hits\n";
  for (const auto& line : deltas) out << line << "\n";
  return out.str();
}

CensusTables parse_census_csv(std::istream& in) {
  CensusTables out;
  std::string line;
  if (!std::getline(in, line) || line != "kind,key,n1,n2,ratio")
    throw std::runtime_error("expected-census file: bad header");
  long lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    size_t start = 0;
    for (size_t pos = 0; (pos = line.find(',', start)) != std::string::npos;
         start = pos + 1)
      cells.push_back(line.substr(start, pos - start));
    cells.push_back(line.substr(start));
    if (cells.size() != 5)
      throw std::runtime_error("expected-census file line " +
                               std::to_string(lineno) + ": need 5 cells");
    long n1, n2;
    try {
      n1 = std::stol(cells[2]);
      n2 = std::stol(cells[3]);
    } catch (const std::exception&) {
      throw std::runtime_error("expected-census file line " +
                               std::to_string(lineno) + ": bad counts");
    }
    if (cells[0] == "rule") {
      out.table2[cells[1]] = {n1, n2};
    } else if (cells[0] == "category") {
      auto dot = cells[1].find('.');
      if (dot == std::string::npos)
        throw std::runtime_error("expected-census file line " +
                                 std::to_string(lineno) + ": bad category key");
      out.table3[{std::stoi(cells[1].substr(0, dot)),
                  std::stoi(cells[1].substr(dot + 1))}] = {n1, n2};
    } else if (cells[0] == "total") {
      out.total = {n1, n2};
    } else {
      throw std::runtime_error("expected-census file line " +
                               std::to_string(lineno) + ": unknown kind \"" +
                               cells[0] + "\"");
    }
  }
  return out;
}

std::vector<std::string> compare_census(const CensusTables& got,
                                        const CensusTables& want) {
  std::vector<std::string> mismatches;
  auto pair_str = [](long a, long b) {
    return "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
  };
  for (const auto& [id, cell] : want.table2) {
    auto it = got.table2.find(id);
    if (it == got.table2.end())
      mismatches.push_back("rule " + id + ": missing from census");
    else if (!(it->second == cell))
      mismatches.push_back("rule " + id + ": hits/unique " +
                           pair_str(it->second.hits, it->second.unique_hits) +
                           ", expected " + pair_str(cell.hits, cell.unique_hits));
  }
  for (const auto& [key, row] : want.table3) {
    auto it = got.table3.find(key);
    if (it == got.table3.end())
      mismatches.push_back("category " + category_name(key) +
                           ": missing from census");
    else if (!(it->second == row))
      mismatches.push_back(
          "category " + category_name(key) + ": undetected/total " +
          pair_str(it->second.undetected, it->second.total) + ", expected " +
          pair_str(row.undetected, row.total));
  }
  if (want.total.total != 0 && !(got.total == want.total))
    mismatches.push_back("total: undetected/total " +
                         pair_str(got.total.undetected, got.total.total) +
                         ", expected " +
                         pair_str(want.total.undetected, want.total.total));
  return mismatches;
}

}  // namespace weil3
