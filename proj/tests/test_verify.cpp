#include "blowcurv/verify.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "blowcurv/report_io.hpp"
#include "doctest.h"

using namespace blowcurv;

namespace {

std::filesystem::path temp_dir(const char* leaf) {
  const auto dir = std::filesystem::temp_directory_path() / "blowcurv-tests" /
                   leaf;
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

SweepConfig tiny_config() {
  SweepConfig cfg;
  cfg.n_values = {2};
  cfg.t_values = {0.1};
  cfg.c_values = {0.0};
  return cfg;
}

}  // namespace

TEST_CASE("single-triple curvature suite passes well under tolerance") {
  const std::vector<VerificationReport> reports =
      run_suite(Suite::curvature, tiny_config());
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].pass);
  CHECK(reports[0].abs_error < 1e-5);
  CHECK(reports[0].numeric_op == "chern_curvature");
  CHECK(reports[0].closed_form_op == "curvature_tensor");
}

TEST_CASE("suite row counts over a small sweep") {
  SweepConfig cfg = tiny_config();
  cfg.n_values = {2, 3};
  cfg.c_values = {0.0, 2.0};
  CHECK(run_suite(Suite::curvature, cfg).size() == 4);
  CHECK(run_suite(Suite::scalar, cfg).size() == 4);
  CHECK(run_suite(Suite::ricci, cfg).size() == 4);
  CHECK(run_suite(Suite::gauss, cfg).size() == 8);   // identity + sigma rows
  CHECK(run_suite(Suite::hsc, cfg).size() == 12);    // three directions each
  const auto all = run_all_suites(cfg);
  CHECK(summarize(all).total == static_cast<int>(all.size()));
  CHECK(summarize(all).failed == 0);
}

TEST_CASE("invalid t is reported as a case failure, not an abort") {
  SweepConfig cfg = tiny_config();
  cfg.t_values = {-1.0};
  const auto reports = run_suite(Suite::curvature, cfg);
  REQUIRE(reports.size() == 1);
  CHECK_FALSE(reports[0].pass);
  CHECK(reports[0].error.find("non-positive t") != std::string::npos);
  CHECK(summarize(reports).failed == 1);
}

TEST_CASE("an over-tight tolerance flushes out engineered failures") {
  SweepConfig cfg;
  cfg.n_values = {4};
  cfg.t_values = {0.25};
  cfg.c_values = {2.0};
  cfg.tolerance = 1e-15;
  const auto reports = run_all_suites(cfg);
  CHECK(summarize(reports).failed > 0);
  // Itemized: failing rows keep their case ids and values.
  for (const auto& r : reports) {
    if (!r.pass) {
      CHECK(!r.case_id.empty());
      CHECK(r.error.empty());  // a comparison failure, not an engine error
    }
  }
}

TEST_CASE("config validation") {
  SweepConfig cfg = tiny_config();
  cfg.t_values.clear();
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg = tiny_config();
  cfg.tolerance = 0.0;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg = tiny_config();
  cfg.n_values = {1};
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  CHECK_NOTHROW(validate(tiny_config()));
}

TEST_CASE("pass rule uses max(tolerance, 10 * est_error)") {
  CHECK(passes(1e-6, 0.0, 1e-5));
  CHECK_FALSE(passes(2e-5, 0.0, 1e-5));
  CHECK(passes(2e-5, 3e-6, 1e-5));        // 10 * est wins
  CHECK_FALSE(passes(5e-5, 3e-6, 1e-5));
}

TEST_CASE("json document carries the schema and is deterministic") {
  const SweepConfig cfg = tiny_config();
  const auto reports = run_all_suites(cfg);
  const std::string a = to_json(cfg, reports);
  const std::string b = to_json(cfg, run_all_suites(cfg));
  CHECK(a == b);
  CHECK(a.find("\"version\": \"1\"") != std::string::npos);
  CHECK(a.find("\"config\"") != std::string::npos);
  CHECK(a.find("\"cases\"") != std::string::npos);
  CHECK(a.find("\"summary\"") != std::string::npos);
  CHECK(a.find("\"numeric_op\"") != std::string::npos);
  CHECK(a.find("\"closed_form_op\"") != std::string::npos);
}

TEST_CASE("csv header matches the documented column order") {
  const auto reports = run_suite(Suite::scalar, tiny_config());
  const std::string csv = to_csv(reports);
  CHECK(csv.rfind("n,t,c,suite,case,numeric,closed_form,abs_error,rel_error,"
                  "est_error,pass\n",
                  0) == 0);
  CHECK(csv.find("\r") == std::string::npos);  // LF endings only
  CHECK(csv.find(",scalar,") != std::string::npos);
}

TEST_CASE("write_report emits byte-identical files for identical configs") {
  SweepConfig cfg = tiny_config();
  cfg.c_values = {0.0, 2.0};
  const auto dir1 = temp_dir("rep-a");
  const auto dir2 = temp_dir("rep-b");
  std::vector<VerificationReport> reports;
  const ReportFiles f1 = write_report(cfg, dir1, ReportFormat::both, &reports);
  const ReportFiles f2 = write_report(cfg, dir2, ReportFormat::both);
  CHECK(summarize(reports).failed == 0);
  CHECK(slurp(f1.json) == slurp(f2.json));
  CHECK(slurp(f1.csv) == slurp(f2.csv));
}

TEST_CASE("write_report rejects unusable destinations") {
  CHECK_THROWS_AS(write_report(tiny_config(), "/proc/no-such-dir/x",
                               ReportFormat::json),
                  UsageError);
  SweepConfig cfg = tiny_config();
  cfg.t_values.clear();
  CHECK_THROWS_AS(write_report(cfg, temp_dir("rep-c"), ReportFormat::json),
                  UsageError);
}

TEST_CASE("config file parsing") {
  const auto dir = temp_dir("config");
  const auto path = dir / "sweep.cfg";
  {
    std::ofstream out(path);
    out << "# sweep settings\n"
        << "n = 2, 3\n"
        << "t = 0.1, 0.5\n"
        << "c = -1, 2\n"
        << "step = 0.01\n"
        << "order = 2\n"
        << "richardson = off\n"
        << "tolerance = 1e-4\n";
  }
  const SweepConfig cfg = parse_config_file(path);
  CHECK(cfg.n_values == std::vector<int>{2, 3});
  CHECK(cfg.t_values == std::vector<double>{0.1, 0.5});
  CHECK(cfg.c_values == std::vector<double>{-1.0, 2.0});
  CHECK(cfg.scheme.step == 0.01);
  CHECK(cfg.scheme.order == 2);
  CHECK_FALSE(cfg.scheme.richardson);
  CHECK(cfg.tolerance == 1e-4);

  SUBCASE("unknown keys are usage errors") {
    SweepConfig scratch;
    CHECK_THROWS_AS(apply_config_entry(scratch, "bogus", "1"), UsageError);
    CHECK_THROWS_AS(apply_config_entry(scratch, "richardson", "maybe"),
                    UsageError);
    CHECK_THROWS_AS(apply_config_entry(scratch, "t", "0.1, zebra"),
                    UsageError);
  }

  SUBCASE("an emptied list is caught by validation") {
    SweepConfig scratch;
    apply_config_entry(scratch, "t", "");
    CHECK(scratch.t_values.empty());
    CHECK_THROWS_AS(validate(scratch), std::invalid_argument);
  }

  SUBCASE("missing files are usage errors") {
    CHECK_THROWS_AS(parse_config_file(dir / "nope.cfg"), UsageError);
  }
}

TEST_CASE("hsc scan") {
  SUBCASE("well below the threshold the scan finds negative directions") {
    const HscScan scan = hsc_scan({2, 0.05, 2.0}, 1000, DiffScheme{});
    CHECK(scan.negative);
    CHECK(scan.grid_min_hsc < 0.0);
    CHECK(scan.analytic_in_range);
    CHECK(scan.analytic_x ==
          doctest::Approx(2.0 * 0.95 / 6.1).epsilon(1e-12));
    CHECK(scan.analytic_value < 0.0);
    // Engine spot check at the analytic x agrees with the closed form.
    const double closed = closed_form::hsc(
        scan.params,
        closed_form::direction_with_normal_mass(2, scan.analytic_x));
    CHECK(std::abs(scan.numeric_hsc_at_analytic_x - closed) < 1e-6);
    CHECK(scan.table.size() == 1001);
  }

  SUBCASE("at the threshold the analytic critical value vanishes") {
    const HscScan scan = hsc_scan({2, 0.2, 2.0}, 1000, DiffScheme{});
    CHECK(std::abs(scan.analytic_value) < 1e-4);
  }

  SUBCASE("above the threshold the analytic critical value is positive") {
    const HscScan scan = hsc_scan({3, 0.5, 2.0}, 10, DiffScheme{});
    CHECK(scan.analytic_value == doctest::Approx(6.0 / 7.0).epsilon(1e-12));
    CHECK(scan.analytic_value > 0.0);
  }

  SUBCASE("grid must resolve at least the endpoints") {
    CHECK_THROWS_AS(hsc_scan({2, 0.1, 0.0}, 1, DiffScheme{}),
                    std::invalid_argument);
  }
}

TEST_CASE("threshold table") {
  const auto rows = threshold_table({2.0, 0.0, -1.0});
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].t_star == doctest::Approx(0.2).epsilon(1e-12));
  CHECK_FALSE(rows[0].negative_for_all_t);
  CHECK(std::abs(rows[0].bisection - 0.2) < 1e-9);
  CHECK(rows[1].t_star == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(rows[2].negative_for_all_t);
}

TEST_CASE("scan and threshold serializers") {
  const HscScan scan = hsc_scan({2, 0.1, 0.0}, 10, DiffScheme{});
  const std::string json = to_json(scan);
  CHECK(json.find("\"grid_min_hsc\"") != std::string::npos);
  CHECK(json.find("\"table\"") != std::string::npos);
  CHECK(to_csv(scan).rfind("x,p_t,hsc\n", 0) == 0);

  const auto rows = threshold_table({2.0, -1.0});
  const std::string tjson = to_json(rows);
  CHECK(tjson.find("\"t_star\"") != std::string::npos);
  const std::string tcsv = to_csv(rows);
  CHECK(tcsv.rfind("c,t_star,negative_for_all_t,bisection\n", 0) == 0);
  CHECK(tcsv.find("true") != std::string::npos);
}

TEST_CASE("format_double uses 17 significant digits") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(1e-5) == "1.0000000000000001e-05");
}
