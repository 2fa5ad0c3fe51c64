#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace hk {

struct SuiteConfig {
  std::string suite = "all";
  std::string context = "su2_u1";
  int grid = 2000;
  int steps = 2000;
  std::uint64_t seed = 42;
  std::map<std::string, double> tol;
  std::map<std::string, int> sweep;
  bool timing = false;

  /// Per-suite key=value sections from a config file, applied under flags.
  std::map<std::string, std::map<std::string, std::string>> sections;
  /// Keys set on the command line; sections never override these.
  std::set<std::string> pinned;

  double tolerance(const std::string& key, double fallback) const;
  int sweep_size(const std::string& key, int fallback) const;
};

struct ReportRecord {
  std::string suite;
  std::string case_id;
  std::string status;  // pass, fail or skip
  double metric = 0.0;
  double tol = 0.0;
  long long ms = 0;
  std::string note;
};

std::vector<std::string> suite_names();

/// Applies one `key=value` setting (context, grid, steps, seed, timing, tol.X, sweep.X).
void apply_setting(SuiteConfig& config, const std::string& key, const std::string& value);

/// Parses `[section]` headers and `key=value` lines; `[general]` (or no header) applies directly.
void parse_config_text(const std::string& text, SuiteConfig& config);

/// Runs one suite, or every suite for "all". Records are ordered by suite then case id.
std::vector<ReportRecord> run_suite(const SuiteConfig& config);

/// Auxiliary tables keyed by file name (curvature table, residual against scale).
std::map<std::string, std::string> suite_tables(const SuiteConfig& config);

std::string report_json(const std::vector<ReportRecord>& records);
std::string report_csv(const std::vector<ReportRecord>& records);
int exit_code(const std::vector<ReportRecord>& records);

}  // namespace hk
