#pragma once

// Experiment reports: per-check records, convergence fits and CSV tables,
// plus writers for `<out>/<experiment>/summary.json` and `*.csv`.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "scaledgauge/convergence.hpp"
#include "scaledgauge/error.hpp"

namespace scaledgauge {

enum class Relation { kAtMost, kAtLeast, kGreater, kEqual };

inline const char* to_string(Relation r) {
  switch (r) {
    case Relation::kAtMost: return "<=";
    case Relation::kAtLeast: return ">=";
    case Relation::kGreater: return ">";
    case Relation::kEqual: return "==";
  }
  return "?";
}

struct CheckRecord {
  std::string name;
  double observed = 0.0;
  double expected = 0.0;  // threshold or exact target
  Relation relation = Relation::kAtMost;
  bool pass = false;
};

inline CheckRecord make_check(std::string name, double observed, Relation relation, double expected) {
  bool pass = false;
  switch (relation) {
    case Relation::kAtMost: pass = observed <= expected; break;
    case Relation::kAtLeast: pass = observed >= expected; break;
    case Relation::kGreater: pass = observed > expected; break;
    case Relation::kEqual: pass = observed == expected; break;
  }
  return CheckRecord{std::move(name), observed, expected, relation, pass};
}

struct FitRecord {
  std::string name;
  ConvergenceFit fit;
};

class CsvTable {
 public:
  CsvTable() = default;
  CsvTable(std::string name, std::vector<std::string> header) : name_(std::move(name)), header_(std::move(header)) {}

  const std::string& name() const { return name_; }
  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  void add_row(std::vector<std::string> row) {
    if (row.size() != header_.size()) throw Error(ErrorKind::kDimensionMismatch, "csv row width in " + name_);
    rows_.push_back(std::move(row));
  }

  std::string render() const {
    std::string out;
    auto line = [&out](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += cells[i];
      }
      out += '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
    return out;
  }

 private:
  std::string name_;
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

struct ExperimentReport {
  std::string name;
  std::vector<CheckRecord> checks;
  std::vector<FitRecord> fits;
  std::deque<CsvTable> tables;  // references from table() stay valid
  double duration_seconds = 0.0;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
  }

  void check(std::string check_name, double observed, Relation relation, double expected) {
    checks.push_back(make_check(std::move(check_name), observed, relation, expected));
  }

  CsvTable& table(const std::string& table_name, std::vector<std::string> header) {
    tables.emplace_back(table_name, std::move(header));
    return tables.back();
  }
};

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string format_int(long long v) { return std::to_string(v); }

inline nlohmann::json json_number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

inline nlohmann::json to_json(const ExperimentReport& report) {
  nlohmann::json j;
  j["experiment"] = report.name;
  j["pass"] = report.passed();
  j["duration_seconds"] = report.duration_seconds;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : report.checks) {
    j["checks"].push_back({{"name", c.name},
                           {"observed", json_number(c.observed)},
                           {"expected", json_number(c.expected)},
                           {"relation", to_string(c.relation)},
                           {"pass", c.pass}});
  }
  j["fits"] = nlohmann::json::array();
  for (const auto& f : report.fits) {
    nlohmann::json points = nlohmann::json::array();
    for (const auto& [h, e] : f.fit.points) points.push_back({json_number(h), json_number(e)});
    j["fits"].push_back({{"name", f.name},
                         {"slope", json_number(f.fit.slope)},
                         {"intercept", json_number(f.fit.intercept)},
                         {"points", points}});
  }
  j["tables"] = nlohmann::json::array();
  for (const auto& t : report.tables) j["tables"].push_back(t.name() + ".csv");
  return j;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kInvalidArgument, "cannot write " + path.string());
  out << text;
}

/// Writes summary.json and one CSV per table below `out_dir/<name>`.
inline void write_report(const ExperimentReport& report, const std::filesystem::path& out_dir) {
  const std::filesystem::path dir = out_dir / report.name;
  std::filesystem::create_directories(dir);
  write_text(dir / "summary.json", to_json(report).dump(2) + "\n");
  for (const auto& t : report.tables) write_text(dir / (t.name() + ".csv"), t.render());
}

}  // namespace scaledgauge
