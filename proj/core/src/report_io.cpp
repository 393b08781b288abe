#include "blowcurv/report_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace blowcurv {

namespace {

// Minimal JSON string escaping; report strings are ASCII in practice but
// error messages may carry arbitrary bytes.
std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  out += "\"";
  return out;
}

std::string json_number(double v) {
  if (!std::isfinite(v)) return "null";
  return format_double(v);
}

std::string json_optional(const std::optional<double>& v) {
  return v ? json_number(*v) : "null";
}

template <typename T, typename Fmt>
std::string json_list(const std::vector<T>& values, Fmt fmt) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += fmt(values[i]);
  }
  out += "]";
  return out;
}

std::string csv_number(double v) {
  if (!std::isfinite(v)) return "nan";
  return format_double(v);
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw UsageError("cannot open '" + path.string() + "' for writing");
  }
  out << body;
  if (!out) {
    throw UsageError("failed writing '" + path.string() + "'");
  }
}

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> items;
  std::string current;
  for (char ch : s) {
    if (ch == ',') {
      items.push_back(trim(current));
      current.clear();
    } else {
      current += ch;
    }
  }
  items.push_back(trim(current));
  return items;
}

double parse_number(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw UsageError("config key '" + key + "': cannot parse number '" +
                     value + "'");
  }
}

int parse_int(const std::string& key, const std::string& value) {
  const double v = parse_number(key, value);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v) {
    throw UsageError("config key '" + key + "': expected integer, got '" +
                     value + "'");
  }
  return i;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string to_json(const SweepConfig& cfg,
                    const std::vector<VerificationReport>& reports) {
  const Summary summary = summarize(reports);
  std::string out;
  out += "{\n";
  out += "  \"version\": \"1\",\n";
  out += "  \"config\": {\n";
  out += "    \"n\": " + json_list(cfg.n_values, [](int n) {
           return std::to_string(n);
         }) + ",\n";
  out += "    \"t\": " + json_list(cfg.t_values, json_number) + ",\n";
  out += "    \"c\": " + json_list(cfg.c_values, json_number) + ",\n";
  out += "    \"step\": " + json_number(cfg.scheme.step) + ",\n";
  out += "    \"order\": " + std::to_string(cfg.scheme.order) + ",\n";
  out += std::string("    \"richardson\": ") +
         (cfg.scheme.richardson ? "true" : "false") + ",\n";
  out += "    \"tolerance\": " + json_number(cfg.tolerance) + "\n";
  out += "  },\n";
  out += "  \"cases\": [\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const VerificationReport& r = reports[i];
    out += "    {\n";
    out += "      \"suite\": " + json_string(r.suite) + ",\n";
    out += "      \"case\": " + json_string(r.case_id) + ",\n";
    out += "      \"n\": " + std::to_string(r.n) + ",\n";
    out += "      \"t\": " + json_number(r.t) + ",\n";
    out += "      \"c\": " + json_number(r.c) + ",\n";
    out += "      \"direction\": " +
           (r.direction.empty() ? std::string("null")
                                : json_string(r.direction)) + ",\n";
    out += "      \"numeric_op\": " + json_string(r.numeric_op) + ",\n";
    out += "      \"closed_form_op\": " + json_string(r.closed_form_op) +
           ",\n";
    out += "      \"numeric\": " + json_optional(r.numeric) + ",\n";
    out += "      \"closed_form\": " + json_optional(r.closed_form) + ",\n";
    out += "      \"abs_error\": " + json_number(r.abs_error) + ",\n";
    out += "      \"rel_error\": " + json_number(r.rel_error) + ",\n";
    out += "      \"est_error\": " + json_number(r.est_error) + ",\n";
    out += std::string("      \"pass\": ") + (r.pass ? "true" : "false") +
           ",\n";
    out += "      \"error\": " +
           (r.error.empty() ? std::string("null") : json_string(r.error)) +
           "\n";
    out += i + 1 < reports.size() ? "    },\n" : "    }\n";
  }
  out += "  ],\n";
  out += "  \"summary\": {\"total\": " + std::to_string(summary.total) +
         ", \"passed\": " + std::to_string(summary.passed) +
         ", \"failed\": " + std::to_string(summary.failed) + "}\n";
  out += "}\n";
  return out;
}

std::string to_csv(const std::vector<VerificationReport>& reports) {
  std::string out =
      "n,t,c,suite,case,numeric,closed_form,abs_error,rel_error,est_error,"
      "pass\n";
  for (const VerificationReport& r : reports) {
    out += std::to_string(r.n) + "," + csv_number(r.t) + "," +
           csv_number(r.c) + "," + r.suite + "," + r.case_id + ",";
    out += (r.numeric ? csv_number(*r.numeric) : std::string()) + ",";
    out += (r.closed_form ? csv_number(*r.closed_form) : std::string()) + ",";
    out += csv_number(r.abs_error) + "," + csv_number(r.rel_error) + "," +
           csv_number(r.est_error) + ",";
    out += r.pass ? "true" : "false";
    out += "\n";
  }
  return out;
}

std::string to_json(const HscScan& scan) {
  std::string out;
  out += "{\n";
  out += "  \"version\": \"1\",\n";
  out += "  \"params\": {\"n\": " + std::to_string(scan.params.n) +
         ", \"t\": " + json_number(scan.params.t) +
         ", \"c\": " + json_number(scan.params.c) + "},\n";
  out += "  \"grid\": " + std::to_string(scan.grid) + ",\n";
  out += "  \"grid_min_hsc\": " + json_number(scan.grid_min_hsc) + ",\n";
  out += "  \"grid_argmin_x\": " + json_number(scan.grid_argmin_x) + ",\n";
  out += "  \"grid_min_poly\": " + json_number(scan.grid_min_poly) + ",\n";
  out += "  \"analytic_x\": " + json_number(scan.analytic_x) + ",\n";
  out += "  \"analytic_value\": " + json_number(scan.analytic_value) + ",\n";
  out += std::string("  \"analytic_in_range\": ") +
         (scan.analytic_in_range ? "true" : "false") + ",\n";
  out += "  \"numeric_hsc_at_analytic_x\": " +
         json_number(scan.numeric_hsc_at_analytic_x) + ",\n";
  out += std::string("  \"negative\": ") + (scan.negative ? "true" : "false") +
         ",\n";
  out += "  \"table\": [\n";
  for (std::size_t i = 0; i < scan.table.size(); ++i) {
    const auto& row = scan.table[i];
    out += "    [" + json_number(row[0]) + ", " + json_number(row[1]) + ", " +
           json_number(row[2]) + "]";
    out += i + 1 < scan.table.size() ? ",\n" : "\n";
  }
  out += "  ]\n";
  out += "}\n";
  return out;
}

std::string to_csv(const HscScan& scan) {
  std::string out = "x,p_t,hsc\n";
  for (const auto& row : scan.table) {
    out += csv_number(row[0]) + "," + csv_number(row[1]) + "," +
           csv_number(row[2]) + "\n";
  }
  return out;
}

std::string to_json(const std::vector<ThresholdRow>& rows) {
  std::string out;
  out += "{\n";
  out += "  \"version\": \"1\",\n";
  out += "  \"thresholds\": [\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const ThresholdRow& r = rows[i];
    out += "    {\"c\": " + json_number(r.c) +
           ", \"t_star\": " + json_number(r.t_star) +
           ", \"negative_for_all_t\": " +
           (r.negative_for_all_t ? "true" : "false") +
           ", \"bisection\": " + json_number(r.bisection) + "}";
    out += i + 1 < rows.size() ? ",\n" : "\n";
  }
  out += "  ]\n";
  out += "}\n";
  return out;
}

std::string to_csv(const std::vector<ThresholdRow>& rows) {
  std::string out = "c,t_star,negative_for_all_t,bisection\n";
  for (const ThresholdRow& r : rows) {
    out += csv_number(r.c) + ",";
    out += r.negative_for_all_t ? std::string() : csv_number(r.t_star);
    out += ",";
    out += r.negative_for_all_t ? "true" : "false";
    out += ",";
    out += r.negative_for_all_t ? std::string() : csv_number(r.bisection);
    out += "\n";
  }
  return out;
}

ReportFormat parse_format(const std::string& name) {
  if (name == "json") return ReportFormat::json;
  if (name == "csv") return ReportFormat::csv;
  if (name == "both") return ReportFormat::both;
  throw UsageError("unknown format '" + name + "' (expected json|csv|both)");
}

ReportFiles write_report(const SweepConfig& cfg,
                         const std::filesystem::path& out_dir,
                         ReportFormat format,
                         std::vector<VerificationReport>* reports_out) {
  try {
    validate(cfg);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec || !std::filesystem::is_directory(out_dir)) {
    throw UsageError("cannot create output directory '" + out_dir.string() +
                     "'");
  }

  const std::vector<VerificationReport> reports = run_all_suites(cfg);
  ReportFiles files;
  if (format == ReportFormat::json || format == ReportFormat::both) {
    files.json = out_dir / "report.json";
    write_file(files.json, to_json(cfg, reports));
  }
  if (format == ReportFormat::csv || format == ReportFormat::both) {
    files.csv = out_dir / "report.csv";
    write_file(files.csv, to_csv(reports));
  }
  if (reports_out) *reports_out = reports;
  return files;
}

void apply_config_entry(SweepConfig& cfg, const std::string& key,
                        const std::string& value) {
  if (key == "n") {
    cfg.n_values.clear();
    if (!trim(value).empty()) {
      for (const auto& item : split_list(value)) {
        cfg.n_values.push_back(parse_int(key, item));
      }
    }
  } else if (key == "t") {
    cfg.t_values.clear();
    if (!trim(value).empty()) {
      for (const auto& item : split_list(value)) {
        cfg.t_values.push_back(parse_number(key, item));
      }
    }
  } else if (key == "c") {
    cfg.c_values.clear();
    if (!trim(value).empty()) {
      for (const auto& item : split_list(value)) {
        cfg.c_values.push_back(parse_number(key, item));
      }
    }
  } else if (key == "step") {
    cfg.scheme.step = parse_number(key, value);
  } else if (key == "order") {
    cfg.scheme.order = parse_int(key, value);
  } else if (key == "richardson") {
    if (value == "on") {
      cfg.scheme.richardson = true;
    } else if (value == "off") {
      cfg.scheme.richardson = false;
    } else {
      throw UsageError("config key 'richardson': expected on|off, got '" +
                       value + "'");
    }
  } else if (key == "tolerance") {
    cfg.tolerance = parse_number(key, value);
  } else {
    throw UsageError("unknown config key '" + key + "'");
  }
}

SweepConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw UsageError("cannot read config file '" + path.string() + "'");
  }
  SweepConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw UsageError("config file " + path.string() + ":" +
                       std::to_string(line_no) + ": expected key = value");
    }
    apply_config_entry(cfg, trim(stripped.substr(0, eq)),
                       trim(stripped.substr(eq + 1)));
  }
  return cfg;
}

}  // namespace blowcurv
