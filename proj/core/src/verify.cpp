#include "blowcurv/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace blowcurv {

namespace {

std::string triple_id(int n, double t, double c) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "n=%d t=%g c=%g", n, t, c);
  return buf;
}

double relative(double abs_error, double reference) {
  return std::abs(reference) > 1e-12 ? abs_error / std::abs(reference)
                                     : abs_error;
}

VerificationReport make_case(Suite suite, int n, double t, double c,
                             std::string numeric_op,
                             std::string closed_form_op) {
  VerificationReport rep;
  rep.suite = suite_name(suite);
  rep.case_id = triple_id(n, t, c);
  rep.n = n;
  rep.t = t;
  rep.c = c;
  rep.numeric_op = std::move(numeric_op);
  rep.closed_form_op = std::move(closed_form_op);
  return rep;
}

void finish_case(VerificationReport& rep, double numeric, double closed,
                 double abs_error, double est_error, double tolerance) {
  rep.numeric = numeric;
  rep.closed_form = closed;
  rep.abs_error = abs_error;
  rep.rel_error = relative(abs_error, closed);
  rep.est_error = est_error;
  rep.pass = passes(abs_error, est_error, tolerance);
}

void fail_case(VerificationReport& rep, const std::exception& e) {
  rep.pass = false;
  rep.error = e.what();
}

// Runs fn(i) for i in [0, count) on a small worker pool. Each index writes
// only its own output slot, so no further synchronization is needed.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const unsigned hw = std::thread::hardware_concurrency();
  const unsigned workers =
      std::min<std::size_t>(count, hw == 0 ? 1 : hw);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

void validate(const SweepConfig& cfg) {
  if (cfg.n_values.empty() || cfg.t_values.empty() || cfg.c_values.empty()) {
    throw std::invalid_argument(
        "SweepConfig: n, t and c value lists must be non-empty");
  }
  if (!(cfg.tolerance > 0.0)) {
    throw std::invalid_argument("SweepConfig: tolerance must be positive");
  }
  for (int n : cfg.n_values) {
    if (n < 2) {
      throw std::invalid_argument("SweepConfig: dimensions must be >= 2");
    }
  }
  validate_scheme(cfg.scheme);
}

std::string suite_name(Suite s) {
  switch (s) {
    case Suite::curvature: return "curvature";
    case Suite::hsc: return "hsc";
    case Suite::ricci: return "ricci";
    case Suite::scalar: return "scalar";
    case Suite::gauss: return "gauss";
  }
  return "unknown";
}

const std::vector<Suite>& all_suites() {
  static const std::vector<Suite> suites = {
      Suite::curvature, Suite::hsc, Suite::ricci, Suite::scalar, Suite::gauss};
  return suites;
}

bool passes(double abs_error, double est_error, double tolerance) {
  return abs_error <= std::max(tolerance, 10.0 * est_error);
}

// ---------------------------------------------------------------------------
// Per-triple cases
// ---------------------------------------------------------------------------

VerificationReport curvature_case(int n, double t, double c,
                                  const DiffScheme& scheme, double tolerance) {
  VerificationReport rep = make_case(Suite::curvature, n, t, c,
                                     "chern_curvature", "curvature_tensor");
  try {
    const BlowupChart chart = blowup_metric(n, t, c);
    const CurvatureResult numeric =
        chern_curvature(chart.induced, Direction::Zero(n), scheme);
    const Rank4Tensor closed = closed_form::curvature_tensor({n, t, c});

    double worst = 0.0;
    Complex worst_numeric(0.0, 0.0), worst_closed(0.0, 0.0);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          for (int m = 0; m < n; ++m) {
            const double d =
                std::abs(numeric.tensor(j, k, l, m) - closed(j, k, l, m));
            if (d >= worst) {
              worst = d;
              worst_numeric = numeric.tensor(j, k, l, m);
              worst_closed = closed(j, k, l, m);
            }
          }
    finish_case(rep, worst_numeric.real(), worst_closed.real(), worst,
                numeric.est_error, tolerance);
  } catch (const std::exception& e) {
    fail_case(rep, e);
  }
  return rep;
}

std::vector<VerificationReport> hsc_cases(int n, double t, double c,
                                          const DiffScheme& scheme,
                                          double tolerance) {
  struct Probe {
    const char* label;
    double x;  // |a_n|^2 on the unit direction
  };
  const BlowupParams params{n, t, c};
  std::vector<Probe> probes = {{"e_1", 0.0}, {"e_n", 1.0}};
  try {
    const auto crit = closed_form::hsc_polynomial_critical(params);
    if (crit.in_unit_interval) probes.push_back({"x_t", crit.x});
  } catch (const std::exception&) {
    // degenerate critical data: keep the two basis probes
  }

  // One engine run covers every probe direction.
  std::optional<CurvatureResult> result;
  std::string engine_error;
  try {
    const BlowupChart chart = blowup_metric(n, t, c);
    result = chern_curvature(chart.induced, Direction::Zero(n), scheme);
  } catch (const std::exception& e) {
    engine_error = e.what();
  }

  std::vector<VerificationReport> out;
  for (const auto& probe : probes) {
    VerificationReport rep =
        make_case(Suite::hsc, n, t, c, "holomorphic_sectional_curvature",
                  "hsc");
    rep.case_id += std::string(" dir=") + probe.label;
    rep.direction = probe.label;
    if (!result) {
      rep.pass = false;
      rep.error = engine_error;
      out.push_back(std::move(rep));
      continue;
    }
    try {
      const Direction dir =
          closed_form::direction_with_normal_mass(n, probe.x);
      const double numeric = holomorphic_sectional_curvature(*result, dir);
      const double closed = closed_form::hsc(params, dir);
      finish_case(rep, numeric, closed, std::abs(numeric - closed),
                  result->est_error, tolerance);
    } catch (const std::exception& e) {
      fail_case(rep, e);
    }
    out.push_back(std::move(rep));
  }
  return out;
}

VerificationReport ricci_case(int n, double t, double c,
                              const DiffScheme& scheme, double tolerance) {
  VerificationReport rep =
      make_case(Suite::ricci, n, t, c, "ricci_tensor", "ricci");
  try {
    const BlowupChart chart = blowup_metric(n, t, c);
    const CurvatureResult result =
        chern_curvature(chart.induced, Direction::Zero(n), scheme);
    const BlowupParams params{n, t, c};

    double worst = 0.0;
    Complex worst_numeric(0.0, 0.0), worst_closed(0.0, 0.0);
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        Direction a = Direction::Zero(n);
        Direction b = Direction::Zero(n);
        a[j] = 1.0;
        b[k] = 1.0;
        const Complex numeric = ricci_tensor(result, a, b);
        const Complex closed = closed_form::ricci(params, a, b);
        const double d = std::abs(numeric - closed);
        if (d >= worst) {
          worst = d;
          worst_numeric = numeric;
          worst_closed = closed;
        }
      }
    }
    finish_case(rep, worst_numeric.real(), worst_closed.real(), worst,
                result.est_error, tolerance);
  } catch (const std::exception& e) {
    fail_case(rep, e);
  }
  return rep;
}

VerificationReport scalar_case(int n, double t, double c,
                               const DiffScheme& scheme, double tolerance) {
  VerificationReport rep =
      make_case(Suite::scalar, n, t, c, "scalar_curvature", "scalar");
  try {
    const BlowupChart chart = blowup_metric(n, t, c);
    const CurvatureResult result =
        chern_curvature(chart.induced, Direction::Zero(n), scheme);
    const double numeric = scalar_curvature(result);
    const double closed = closed_form::scalar({n, t, c});
    finish_case(rep, numeric, closed, std::abs(numeric - closed),
                result.est_error, tolerance);
  } catch (const std::exception& e) {
    fail_case(rep, e);
  }
  return rep;
}

std::vector<VerificationReport> gauss_cases(int n, double t, double c,
                                            const DiffScheme& scheme,
                                            double tolerance) {
  std::vector<VerificationReport> out;

  VerificationReport identity =
      make_case(Suite::gauss, n, t, c, "gauss_check", "curvature_tensor");
  identity.case_id += " gauss-identity";
  try {
    const GaussCheckReport report = gauss_check(n, t, c, scheme);
    finish_case(identity, report.max_abs_error, 0.0, report.max_abs_error,
                report.induced_est_error, tolerance);
  } catch (const std::exception& e) {
    fail_case(identity, e);
  }
  out.push_back(std::move(identity));

  VerificationReport sigma_rep = make_case(
      Suite::gauss, n, t, c, "second_fundamental_form", "sigma");
  sigma_rep.case_id += " sigma";
  try {
    const SigmaOperator sigma(n, t, c, scheme);
    const BlowupParams params{n, t, c};
    double worst = 0.0;
    Complex worst_numeric(0.0, 0.0), worst_closed(0.0, 0.0);
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l < n; ++l) {
        Direction a = Direction::Zero(n);
        Direction g = Direction::Zero(n);
        a[j] = 1.0;
        g[l] = 1.0;
        const Eigen::VectorXcd numeric = sigma(a, g);
        const Eigen::VectorXcd closed = closed_form::sigma(params, a, g);
        for (int i = 0; i < n - 1; ++i) {
          const double d = std::abs(numeric[i] - closed[i]);
          if (d >= worst) {
            worst = d;
            worst_numeric = numeric[i];
            worst_closed = closed[i];
          }
        }
      }
    }
    finish_case(sigma_rep, worst_numeric.real(), worst_closed.real(), worst,
                0.0, tolerance);
  } catch (const std::exception& e) {
    fail_case(sigma_rep, e);
  }
  out.push_back(std::move(sigma_rep));
  return out;
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

std::vector<VerificationReport> run_suite(Suite s, const SweepConfig& cfg) {
  validate(cfg);

  std::vector<std::tuple<int, double, double>> triples;
  for (int n : cfg.n_values)
    for (double t : cfg.t_values)
      for (double c : cfg.c_values) triples.emplace_back(n, t, c);

  std::vector<std::vector<VerificationReport>> partial(triples.size());
  parallel_for(triples.size(), [&](std::size_t i) {
    const auto [n, t, c] = triples[i];
    switch (s) {
      case Suite::curvature:
        partial[i] = {curvature_case(n, t, c, cfg.scheme, cfg.tolerance)};
        break;
      case Suite::hsc:
        partial[i] = hsc_cases(n, t, c, cfg.scheme, cfg.tolerance);
        break;
      case Suite::ricci:
        partial[i] = {ricci_case(n, t, c, cfg.scheme, cfg.tolerance)};
        break;
      case Suite::scalar:
        partial[i] = {scalar_case(n, t, c, cfg.scheme, cfg.tolerance)};
        break;
      case Suite::gauss:
        partial[i] = gauss_cases(n, t, c, cfg.scheme, cfg.tolerance);
        break;
    }
  });

  std::vector<VerificationReport> out;
  for (auto& chunk : partial) {
    for (auto& rep : chunk) out.push_back(std::move(rep));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const VerificationReport& a, const VerificationReport& b) {
                     return std::tie(a.suite, a.n, a.t, a.c, a.case_id) <
                            std::tie(b.suite, b.n, b.t, b.c, b.case_id);
                   });
  return out;
}

std::vector<VerificationReport> run_all_suites(const SweepConfig& cfg) {
  std::vector<VerificationReport> out;
  for (Suite s : all_suites()) {
    auto part = run_suite(s, cfg);
    out.insert(out.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  return out;
}

Summary summarize(const std::vector<VerificationReport>& reports) {
  Summary s;
  s.total = static_cast<int>(reports.size());
  for (const auto& rep : reports) {
    (rep.pass ? s.passed : s.failed) += 1;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Scan and threshold commands
// ---------------------------------------------------------------------------

HscScan hsc_scan(const BlowupParams& p, int grid, const DiffScheme& scheme) {
  validate(p);
  if (grid < 2) {
    throw std::invalid_argument("hsc_scan: grid must be at least 2");
  }

  HscScan scan;
  scan.params = p;
  scan.grid = grid;
  scan.table.reserve(grid + 1);

  for (int i = 0; i <= grid; ++i) {
    const double x = static_cast<double>(i) / grid;
    const double poly = closed_form::hsc_polynomial(p, x);
    const double h = closed_form::hsc(
        p, closed_form::direction_with_normal_mass(p.n, x));
    scan.table.push_back({x, poly, h});
    if (i == 0 || h < scan.grid_min_hsc) {
      scan.grid_min_hsc = h;
      scan.grid_argmin_x = x;
    }
    if (i == 0 || poly < scan.grid_min_poly) {
      scan.grid_min_poly = poly;
    }
  }

  const auto crit = closed_form::hsc_polynomial_critical(p);
  scan.analytic_x = crit.x;
  scan.analytic_value = crit.value;
  scan.analytic_in_range = crit.in_unit_interval;

  const double spot_x = std::clamp(crit.x, 0.0, 1.0);
  const BlowupChart chart = blowup_metric(p.n, p.t, p.c);
  const CurvatureResult result =
      chern_curvature(chart.induced, Direction::Zero(p.n), scheme);
  scan.numeric_hsc_at_analytic_x = holomorphic_sectional_curvature(
      result, closed_form::direction_with_normal_mass(p.n, spot_x));

  scan.negative = scan.grid_min_hsc < 0.0;
  return scan;
}

std::vector<ThresholdRow> threshold_table(const std::vector<double>& c_values) {
  std::vector<ThresholdRow> rows;
  rows.reserve(c_values.size());
  for (double c : c_values) {
    ThresholdRow row;
    row.c = c;
    const auto threshold = closed_form::negativity_threshold(c);
    row.t_star = threshold.t_star;
    row.negative_for_all_t = threshold.negative_for_all_t;
    row.bisection = threshold.negative_for_all_t
                        ? std::numeric_limits<double>::quiet_NaN()
                        : closed_form::negativity_threshold_bisection(c);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace blowcurv
