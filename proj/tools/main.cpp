// blowcurv command-line driver: verification sweeps, HSC scans, negativity
// thresholds and machine-readable reports for the blowup-metric curvature
// laboratory. Exit codes: 0 all checks pass, 1 any verification failure,
// 2 usage or configuration error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <list>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "blowcurv/report_io.hpp"

namespace {

using namespace blowcurv;

struct CommonFlags {
  std::vector<int> n;
  std::vector<double> t;
  std::vector<double> c;
  double step = 2e-2;
  int order = 4;
  std::string richardson = "on";
  double tolerance = 1e-5;
  int grid = 1000;
  std::string out;
  std::string format = "both";
  std::string config;

  CLI::Option* n_opt = nullptr;
  CLI::Option* t_opt = nullptr;
  CLI::Option* c_opt = nullptr;
  CLI::Option* step_opt = nullptr;
  CLI::Option* order_opt = nullptr;
  CLI::Option* richardson_opt = nullptr;
  CLI::Option* tolerance_opt = nullptr;
  CLI::Option* grid_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  CLI::Option* format_opt = nullptr;
  CLI::Option* config_opt = nullptr;
};

CommonFlags& add_common_flags(CLI::App* cmd, std::list<CommonFlags>& storage) {
  CommonFlags& f = storage.emplace_back();
  f.n_opt = cmd->add_option("--n", f.n, "dimension n (repeatable)");
  f.t_opt = cmd->add_option("--t", f.t, "Fubini-Study scale t (repeatable)");
  f.c_opt = cmd->add_option("--c", f.c,
                            "base curvature c = H_h(e_n) (repeatable)");
  f.step_opt = cmd->add_option("--step", f.step, "finite-difference step");
  f.order_opt =
      cmd->add_option("--order", f.order, "stencil order {2|4}");
  f.richardson_opt = cmd->add_option("--richardson", f.richardson,
                                     "Richardson extrapolation {on|off}");
  f.tolerance_opt =
      cmd->add_option("--tolerance", f.tolerance, "pass/fail tolerance");
  f.grid_opt = cmd->add_option("--grid", f.grid, "scan grid resolution");
  f.out_opt = cmd->add_option("--out", f.out,
                              "output directory (default $BLOWCURV_OUT_DIR)");
  f.format_opt =
      cmd->add_option("--format", f.format, "output format {json|csv|both}");
  f.config_opt =
      cmd->add_option("--config", f.config, "key = value config file");
  return f;
}

// Config file first, then explicitly passed flags on top.
SweepConfig build_config(const CommonFlags& f, const SweepConfig& defaults) {
  SweepConfig cfg = defaults;
  if (f.config_opt->count()) cfg = parse_config_file(f.config);
  if (f.n_opt->count()) cfg.n_values = f.n;
  if (f.t_opt->count()) cfg.t_values = f.t;
  if (f.c_opt->count()) cfg.c_values = f.c;
  if (f.step_opt->count()) cfg.scheme.step = f.step;
  if (f.order_opt->count()) cfg.scheme.order = f.order;
  if (f.richardson_opt->count()) {
    if (f.richardson == "on") {
      cfg.scheme.richardson = true;
    } else if (f.richardson == "off") {
      cfg.scheme.richardson = false;
    } else {
      throw UsageError("--richardson expects on|off, got '" + f.richardson +
                       "'");
    }
  }
  if (f.tolerance_opt->count()) cfg.tolerance = f.tolerance;
  try {
    validate(cfg);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

SweepConfig single_case_defaults() {
  SweepConfig cfg;
  cfg.n_values = {2};
  cfg.t_values = {0.1};
  cfg.c_values = {0.0};
  return cfg;
}

std::filesystem::path resolve_out_dir(const CommonFlags& f) {
  if (f.out_opt->count()) return f.out;
  if (const char* env = std::getenv("BLOWCURV_OUT_DIR")) return env;
  return ".";
}

void write_command_output(const CommonFlags& f, const std::string& stem,
                          const std::string& json, const std::string& csv) {
  if (!f.out_opt->count() && std::getenv("BLOWCURV_OUT_DIR") == nullptr) {
    return;  // stdout only
  }
  const ReportFormat format = parse_format(f.format);
  const std::filesystem::path dir = resolve_out_dir(f);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw UsageError("cannot create output directory '" + dir.string() + "'");
  }
  auto dump = [&](const std::filesystem::path& path, const std::string& body) {
    std::FILE* file = std::fopen(path.c_str(), "wb");
    if (!file || std::fwrite(body.data(), 1, body.size(), file) != body.size()) {
      if (file) std::fclose(file);
      throw UsageError("cannot write '" + path.string() + "'");
    }
    std::fclose(file);
    std::cout << "wrote " << path.string() << "\n";
  };
  if (format == ReportFormat::json || format == ReportFormat::both) {
    dump(dir / (stem + ".json"), json);
  }
  if (format == ReportFormat::csv || format == ReportFormat::both) {
    dump(dir / (stem + ".csv"), csv);
  }
}

void print_reports(const std::vector<VerificationReport>& reports) {
  for (const VerificationReport& r : reports) {
    std::printf("%-5s %-28s abs_error=%-13.4g est_error=%-10.3g %s\n",
                r.pass ? "pass" : "FAIL", r.case_id.c_str(), r.abs_error,
                r.est_error, r.error.empty() ? "" : r.error.c_str());
  }
  const Summary s = summarize(reports);
  std::printf("total=%d passed=%d failed=%d\n", s.total, s.passed, s.failed);
}

int report_exit_code(const std::vector<VerificationReport>& reports) {
  return summarize(reports).failed == 0 ? 0 : 1;
}

int run_sweep_command(Suite suite, const CommonFlags& f,
                      const SweepConfig& defaults, const std::string& stem) {
  const SweepConfig cfg = build_config(f, defaults);
  const std::vector<VerificationReport> reports = run_suite(suite, cfg);
  print_reports(reports);
  write_command_output(f, stem, to_json(cfg, reports), to_csv(reports));
  return report_exit_code(reports);
}

int cmd_verify_curvature(const CommonFlags& f) {
  return run_sweep_command(Suite::curvature, f, SweepConfig{},
                           "verify-curvature");
}

int cmd_ricci(const CommonFlags& f) {
  const SweepConfig cfg = build_config(f, single_case_defaults());
  const std::vector<VerificationReport> reports =
      run_suite(Suite::ricci, cfg);
  print_reports(reports);
  std::printf(
      "convention: c = H_h(e_n) with |e_n|_h = 1 (normal coordinates at the "
      "blown-up point)\n");
  // Signature frame values of the closed form.
  for (int n : cfg.n_values) {
    for (double t : cfg.t_values) {
      for (double c : cfg.c_values) {
        if (t <= 0.0) continue;
        std::printf(
            "n=%d t=%g c=%g: r(xi_n, xi_n-bar) = %s, r(xi_1, xi_1-bar) = %s\n",
            n, t, c, format_double(c - (n - 1) / t).c_str(),
            format_double(n - 1.0).c_str());
      }
    }
  }
  write_command_output(f, "ricci", to_json(cfg, reports), to_csv(reports));
  return report_exit_code(reports);
}

int cmd_scalar(const CommonFlags& f) {
  return run_sweep_command(Suite::scalar, f, single_case_defaults(), "scalar");
}

int cmd_gauss(const CommonFlags& f) {
  return run_sweep_command(Suite::gauss, f, single_case_defaults(), "gauss");
}

int cmd_hsc_scan(const CommonFlags& f) {
  const SweepConfig cfg = build_config(f, single_case_defaults());
  if (f.grid < 2) throw UsageError("--grid must be at least 2");
  int failures = 0;
  for (int n : cfg.n_values) {
    for (double t : cfg.t_values) {
      for (double c : cfg.c_values) {
        try {
          const HscScan scan = hsc_scan({n, t, c}, f.grid, cfg.scheme);
          std::printf("n=%d t=%g c=%g grid=%d\n", n, t, c, f.grid);
          std::printf("  grid min HSC      = %s at x = %s\n",
                      format_double(scan.grid_min_hsc).c_str(),
                      format_double(scan.grid_argmin_x).c_str());
          std::printf("  grid min p_t      = %s\n",
                      format_double(scan.grid_min_poly).c_str());
          std::printf("  analytic x_t      = %s (in [0,1]: %s)\n",
                      format_double(scan.analytic_x).c_str(),
                      scan.analytic_in_range ? "yes" : "no");
          std::printf("  analytic p_t(x_t) = %s\n",
                      format_double(scan.analytic_value).c_str());
          std::printf("  numeric HSC at x_t = %s\n",
                      format_double(scan.numeric_hsc_at_analytic_x).c_str());
          std::printf("  negative somewhere: %s\n",
                      scan.negative ? "yes" : "no");
          write_command_output(f, "hsc-scan", to_json(scan), to_csv(scan));
        } catch (const UsageError&) {
          throw;
        } catch (const std::exception& e) {
          std::printf("n=%d t=%g c=%g: error: %s\n", n, t, c, e.what());
          ++failures;
        }
      }
    }
  }
  return failures == 0 ? 0 : 1;
}

int cmd_threshold(const CommonFlags& f) {
  std::vector<double> c_values = {-1.0, 0.0, 1.0, 2.0};
  if (f.config_opt->count()) c_values = build_config(f, SweepConfig{}).c_values;
  if (f.c_opt->count()) c_values = f.c;
  const std::vector<ThresholdRow> rows = threshold_table(c_values);
  for (const ThresholdRow& r : rows) {
    if (r.negative_for_all_t) {
      std::printf("c=%-8s t* = (negative at e_n for all t)\n",
                  format_double(r.c).c_str());
    } else {
      std::printf("c=%-8s t* = %s (bisection %s)\n",
                  format_double(r.c).c_str(), format_double(r.t_star).c_str(),
                  format_double(r.bisection).c_str());
    }
  }
  write_command_output(f, "threshold", to_json(rows), to_csv(rows));
  return 0;
}

int cmd_report(const CommonFlags& f) {
  const SweepConfig cfg = build_config(f, SweepConfig{});
  const ReportFormat format = parse_format(f.format);
  std::vector<VerificationReport> reports;
  const ReportFiles files =
      write_report(cfg, resolve_out_dir(f), format, &reports);
  const Summary s = summarize(reports);
  if (!files.json.empty()) std::cout << "wrote " << files.json.string() << "\n";
  if (!files.csv.empty()) std::cout << "wrote " << files.csv.string() << "\n";
  std::printf("total=%d passed=%d failed=%d\n", s.total, s.passed, s.failed);
  return s.failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "blowcurv: numeric vs closed-form curvature checks for the blowup "
      "metric h_t = mu*h + t*b at the exceptional divisor"};
  app.require_subcommand(1);

  std::list<CommonFlags> storage;
  struct Bound {
    CLI::App* cmd;
    CommonFlags* flags;
    int (*run)(const CommonFlags&);
  };
  std::vector<Bound> bound;

  auto add = [&](const char* name, const char* help,
                 int (*run)(const CommonFlags&)) {
    CLI::App* cmd = app.add_subcommand(name, help);
    bound.push_back({cmd, &add_common_flags(cmd, storage), run});
  };

  add("verify-curvature",
      "compare the finite-difference curvature tensor with the closed form "
      "over a parameter sweep",
      cmd_verify_curvature);
  add("hsc-scan",
      "scan holomorphic sectional curvature over |a_n|^2 in [0,1]",
      cmd_hsc_scan);
  add("threshold", "negativity threshold t* = 2/(c+8) per base curvature",
      cmd_threshold);
  add("ricci", "compare Ricci tensor numeric vs closed form on frame pairs",
      cmd_ricci);
  add("scalar", "compare scalar curvature numeric vs closed form",
      cmd_scalar);
  add("gauss",
      "Gauss-equation identity and second-fundamental-form comparison",
      cmd_gauss);
  add("report", "run all suites over the sweep and write JSON/CSV reports",
      cmd_report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    for (const Bound& b : bound) {
      if (b.cmd->parsed()) return b.run(*b.flags);
    }
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
