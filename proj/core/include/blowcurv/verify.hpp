#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "blowcurv/closed_forms.hpp"
#include "blowcurv/curvature_engine.hpp"

namespace blowcurv {

/// Parameter sweep for the verification suites.
struct SweepConfig {
  std::vector<int> n_values = {2, 3, 4};
  std::vector<double> t_values = {0.01, 0.05, 0.1, 0.25, 0.5};
  std::vector<double> c_values = {-1.0, 0.0, 1.0, 2.0};
  DiffScheme scheme;
  double tolerance = 1e-5;
};

/// Throws std::invalid_argument on empty lists, non-positive tolerance or an
/// invalid scheme. Individual t/c values are not validated here: a bad t is
/// a per-case failure, not a config error.
void validate(const SweepConfig& cfg);

/// One numeric-vs-closed-form comparison. For tensor-valued cases the numeric
/// and closed_form fields carry the two values at the worst component and
/// abs_error the max componentwise discrepancy.
struct VerificationReport {
  std::string suite;
  std::string case_id;
  int n = 0;
  double t = 0.0;
  double c = 0.0;
  std::string direction;  // empty unless the case is direction-specific
  std::string numeric_op;
  std::string closed_form_op;
  std::optional<double> numeric;
  std::optional<double> closed_form;
  double abs_error = 0.0;
  double rel_error = 0.0;
  double est_error = 0.0;
  bool pass = false;
  std::string error;  // engine error message when the case failed to run
};

enum class Suite { curvature, hsc, ricci, scalar, gauss };

std::string suite_name(Suite s);
const std::vector<Suite>& all_suites();

/// pass iff abs_error <= max(tolerance, 10 * est_error).
bool passes(double abs_error, double est_error, double tolerance);

// Per-triple case runners. Each catches engine errors and reports them as
// failed cases instead of propagating.
VerificationReport curvature_case(int n, double t, double c,
                                  const DiffScheme& scheme, double tolerance);
std::vector<VerificationReport> hsc_cases(int n, double t, double c,
                                          const DiffScheme& scheme,
                                          double tolerance);
VerificationReport ricci_case(int n, double t, double c,
                              const DiffScheme& scheme, double tolerance);
VerificationReport scalar_case(int n, double t, double c,
                               const DiffScheme& scheme, double tolerance);
std::vector<VerificationReport> gauss_cases(int n, double t, double c,
                                            const DiffScheme& scheme,
                                            double tolerance);

/// Runs one suite over the sweep. Cases execute in parallel; results are
/// sorted by (suite, n, t, c, case id) so parallelism never affects output.
std::vector<VerificationReport> run_suite(Suite s, const SweepConfig& cfg);

/// All suites, concatenated and sorted.
std::vector<VerificationReport> run_all_suites(const SweepConfig& cfg);

struct Summary {
  int total = 0;
  int passed = 0;
  int failed = 0;
};

Summary summarize(const std::vector<VerificationReport>& reports);

/// HSC scan over the x-grid of |a_n|^2 values at fixed parameters. Tabulates
/// the numerator polynomial and the HSC itself, tracks the grid minimum of
/// the HSC, and carries the analytic critical data plus one numeric engine
/// spot check at the analytic x.
struct HscScan {
  BlowupParams params;
  int grid = 0;
  std::vector<std::array<double, 3>> table;  // rows (x, p_t(x), H(x))
  double grid_min_hsc = 0.0;
  double grid_argmin_x = 0.0;
  double grid_min_poly = 0.0;
  double analytic_x = 0.0;
  double analytic_value = 0.0;
  bool analytic_in_range = false;
  double numeric_hsc_at_analytic_x = 0.0;
  bool negative = false;  // grid_min_hsc < 0
};

HscScan hsc_scan(const BlowupParams& p, int grid, const DiffScheme& scheme);

struct ThresholdRow {
  double c = 0.0;
  double t_star = 0.0;
  bool negative_for_all_t = false;
  double bisection = 0.0;  // NaN when negative_for_all_t
};

std::vector<ThresholdRow> threshold_table(const std::vector<double>& c_values);

}  // namespace blowcurv
