#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "quantlab/check_report.hpp"
#include "quantlab/types.hpp"

namespace quantlab::suite {

/// kahler, psh, transform, reduction, density.
const std::vector<std::string>& suite_names();

struct SuiteConfig {
  std::string model = "su2";
  std::string model_file;  // overrides model when set
  std::string suite = "all";
  std::uint64_t seed = 20240607;
  double cutoff = -1.0;  // model default when negative
  int level = 1;
  int samples = 10000;
  std::vector<std::string> potentials{"square", "logeta", "combined:1,1", "cos"};
  int density_grid = 2048;
  int density_refined_grid = 4096;
  std::map<std::string, double> tolerances;  // check id -> tolerance override
  std::string out = "report.json";
  std::string format = "json";

  /// One key=value pair; "tol.<id>" sets a tolerance override.
  void set(const std::string& key, const std::string& value);
  /// Flat key=value lines, '#' comments, blank lines ignored.
  static SuiteConfig from_file(const std::filesystem::path& path);
  /// Throws UsageError on an unknown suite, a non-positive tolerance or an out-of-range level.
  void validate() const;
  /// Suites that will run; a file model runs only the kahler suite under "all".
  std::vector<std::string> selected_suites() const;
};

/// Deterministic for a fixed config. Failing checks are reported, bad input throws UsageError.
ReportList run_suite(const SuiteConfig& cfg);

/// Reads "id=value" into the override map.
void parse_tolerance_override(const std::string& spec, std::map<std::string, double>& into);

std::string emit_json(const ReportList& reports);
ReportList parse_json(const std::string& text);
/// check_id,citation,tolerance,max_error,pass,metadata
std::string emit_csv(const ReportList& reports);
/// Writes summary.svg and any available curve or heatmap plots into dir.
std::vector<std::filesystem::path> emit_svg(const ReportList& reports, const std::filesystem::path& dir);
/// json or csv to a file; throws IoError when the path is not writable.
void write_report(const ReportList& reports, const std::string& format, const std::filesystem::path& path);
ReportList read_report(const std::filesystem::path& path);

}  // namespace quantlab::suite
