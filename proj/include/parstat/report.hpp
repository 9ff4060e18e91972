#ifndef PARSTAT_REPORT_HPP
#define PARSTAT_REPORT_HPP

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "error.hpp"

namespace parstat {

inline constexpr std::string_view kVersion = "1.0.0";

enum class ExperimentKind {
  mnexact_convergence,
  eel_convergence,
  theorem2_gap,
  em_convergence,
  gumbel_ks,
  corollary_ks,
  f2_direct_check,
  fristedt_check,
  rn_conjecture,
  oeis_check,
  sampler_chi2,
};

inline constexpr std::pair<ExperimentKind, std::string_view> kKindNames[] = {
    {ExperimentKind::mnexact_convergence, "mnexact_convergence"},
    {ExperimentKind::eel_convergence, "eel_convergence"},
    {ExperimentKind::theorem2_gap, "theorem2_gap"},
    {ExperimentKind::em_convergence, "em_convergence"},
    {ExperimentKind::gumbel_ks, "gumbel_ks"},
    {ExperimentKind::corollary_ks, "corollary_ks"},
    {ExperimentKind::f2_direct_check, "f2_direct_check"},
    {ExperimentKind::fristedt_check, "fristedt_check"},
    {ExperimentKind::rn_conjecture, "rn_conjecture"},
    {ExperimentKind::oeis_check, "oeis_check"},
    {ExperimentKind::sampler_chi2, "sampler_chi2"},
};

inline std::string_view to_string(ExperimentKind k) {
  for (const auto& [kind, name] : kKindNames) {
    if (kind == k) {
      return name;
    }
  }
  return "unknown";
}

inline ExperimentKind parse_kind(std::string_view name) {
  for (const auto& [kind, n] : kKindNames) {
    if (n == name) {
      return kind;
    }
  }
  throw usage_error("unknown experiment kind '" + std::string(name) + "'");
}

enum class SamplerMethod { exact, boltzmann };
enum class OutputFormat { csv, json };

inline std::string_view to_string(SamplerMethod m) {
  return m == SamplerMethod::exact ? "exact" : "boltzmann";
}

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::mnexact_convergence;
  std::vector<std::int64_t> n_grid; // empty: the kind's default grid
  std::int64_t samples = 10'000;
  std::uint64_t seed = 20240601;
  SamplerMethod method = SamplerMethod::boltzmann;
  std::int64_t workers = 1;
  OutputFormat output_format = OutputFormat::csv;
  std::vector<double> u_grid;          // f2_direct_check only
  std::vector<std::int64_t> r_values;  // fristedt_check only

  /// Checks the invariants that do not depend on the kind.
  void validate() const {
    for (std::size_t i = 1; i < n_grid.size(); ++i) {
      if (n_grid[i] <= n_grid[i - 1]) {
        throw usage_error("n-grid must be strictly increasing");
      }
    }
    if (!n_grid.empty() && n_grid.front() < 1) {
      throw usage_error("n-grid entries must be >= 1");
    }
    if (samples < 1) {
      throw usage_error("samples must be >= 1");
    }
    if (workers < 1) {
      throw usage_error("workers must be >= 1");
    }
  }
};

using Value = std::variant<std::int64_t, double, std::string, bool>;

struct RunMetadata {
  std::string version{kVersion};
  std::string timestamp;
  std::uint64_t seed = 0;
  double wall_clock_seconds = 0.0;
};

/// One table per run: a fixed column list and one row per grid point
/// (or per grid point and sub-case such as r).
struct RunReport {
  std::string name;
  ExperimentSpec spec;
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;
  std::map<std::string, Value> summary;
  std::vector<std::string> notes;
  RunMetadata metadata;
  bool passed = true;

  void add_row(std::vector<Value> row) {
    if (row.size() != columns.size()) {
      throw usage_error("RunReport: row width does not match columns");
    }
    rows.push_back(std::move(row));
  }

  /// Index of a named column; throws when absent.
  std::size_t column(std::string_view name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (columns[i] == name) {
        return i;
      }
    }
    throw usage_error("RunReport: no column '" + std::string(name) + "'");
  }

  double number(std::size_t row, std::string_view name) const {
    const auto& v = rows.at(row).at(column(name));
    if (const auto* d = std::get_if<double>(&v)) {
      return *d;
    }
    if (const auto* i = std::get_if<std::int64_t>(&v)) {
      return static_cast<double>(*i);
    }
    throw usage_error("RunReport: column '" + std::string(name) + "' is not numeric");
  }
};

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// %.17g keeps every double round-trippable.
inline std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string format_value(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_real(x);
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(x);
        } else if constexpr (std::is_same_v<T, bool>) {
          return x ? "true" : "false";
        } else {
          return x;
        }
      },
      v);
}

/// RFC 4180 field: quoted only when it contains a comma, quote, or line break.
inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(s);
  }
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') {
      out += '"';
    }
    out += ch;
  }
  out += '"';
  return out;
}

inline void write_csv(const RunReport& r, std::ostream& out) {
  for (std::size_t i = 0; i < r.columns.size(); ++i) {
    out << (i ? "," : "") << csv_field(r.columns[i]);
  }
  out << "\r\n";
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << csv_field(format_value(row[i]));
    }
    out << "\r\n";
  }
}

inline nlohmann::json to_json(const Value& v) {
  return std::visit([](const auto& x) { return nlohmann::json(x); }, v);
}

inline nlohmann::json to_json(const RunReport& r) {
  nlohmann::json j;
  j["metadata"] = {{"version", r.metadata.version},
                   {"timestamp", r.metadata.timestamp},
                   {"seed", r.metadata.seed},
                   {"wall_clock_seconds", r.metadata.wall_clock_seconds}};
  nlohmann::json grid = nlohmann::json::array();
  for (auto n : r.spec.n_grid) {
    grid.push_back(n);
  }
  j["name"] = r.name;
  j["spec"] = {{"kind", r.name.empty() ? std::string(to_string(r.spec.kind)) : r.name},
               {"n_grid", grid},
               {"samples", r.spec.samples},
               {"seed", r.spec.seed},
               {"method", to_string(r.spec.method)},
               {"workers", r.spec.workers}};
  j["columns"] = r.columns;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      obj[r.columns[i]] = to_json(row[i]);
    }
    rows.push_back(std::move(obj));
  }
  j["rows"] = std::move(rows);
  nlohmann::json summary = nlohmann::json::object();
  for (const auto& [k, v] : r.summary) {
    summary[k] = to_json(v);
  }
  j["summary"] = std::move(summary);
  j["notes"] = r.notes;
  j["passed"] = r.passed;
  return j;
}

inline void write_json(const RunReport& r, std::ostream& out) { out << to_json(r).dump(2) << "\n"; }

inline void write_report(const RunReport& r, OutputFormat fmt, std::ostream& out) {
  if (fmt == OutputFormat::csv) {
    write_csv(r, out);
  } else {
    write_json(r, out);
  }
}

} // namespace parstat

#endif // PARSTAT_REPORT_HPP
