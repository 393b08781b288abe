#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "blowcurv/verify.hpp"

namespace blowcurv {

/// Configuration or usage problems that should map to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// %.17g, the fixed float formatting used in every emitted document.
std::string format_double(double v);

/// Report schema, version "1":
///   {version, config, cases: [...], summary: {total, passed, failed}}
/// Field order and float formatting are fixed and there are no timestamps,
/// so identical inputs serialize to identical bytes.
std::string to_json(const SweepConfig& cfg,
                    const std::vector<VerificationReport>& reports);

/// Columns: n,t,c,suite,case,numeric,closed_form,abs_error,rel_error,
/// est_error,pass. UTF-8, LF line endings.
std::string to_csv(const std::vector<VerificationReport>& reports);

std::string to_json(const HscScan& scan);
std::string to_csv(const HscScan& scan);

std::string to_json(const std::vector<ThresholdRow>& rows);
std::string to_csv(const std::vector<ThresholdRow>& rows);

enum class ReportFormat { json, csv, both };

ReportFormat parse_format(const std::string& name);  // throws UsageError

struct ReportFiles {
  std::filesystem::path json;
  std::filesystem::path csv;
};

/// Runs every suite over the sweep and writes report.json / report.csv under
/// out_dir (created if missing). Unwritable paths throw UsageError. When
/// reports_out is non-null the case list is copied there so the caller can
/// derive its exit code.
ReportFiles write_report(const SweepConfig& cfg,
                         const std::filesystem::path& out_dir,
                         ReportFormat format,
                         std::vector<VerificationReport>* reports_out = nullptr);

/// Sweep configuration as a key = value document. Recognized keys: n, t, c
/// (comma-separated lists), step, order, richardson (on/off), tolerance.
/// '#' starts a comment. Unknown keys or malformed values throw UsageError.
SweepConfig parse_config_file(const std::filesystem::path& path);

/// One key = value assignment; shared by the file parser and flag overrides.
void apply_config_entry(SweepConfig& cfg, const std::string& key,
                        const std::string& value);

}  // namespace blowcurv
