#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "quantlab/suite.hpp"

using namespace quantlab;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailure = 1;
constexpr int kUsage = 2;

void print_reports(const ReportList& reports) {
  int failed = 0;
  for (const auto& r : reports) {
    std::printf("%s  %-44s err=%-12.4g tol=%.3g\n", r.pass ? "PASS" : "FAIL", r.check_id.c_str(), r.max_error,
                r.tolerance);
    if (!r.pass) ++failed;
  }
  std::printf("%zu checks, %d failed\n", reports.size(), failed);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantlab: numerical certificates for the Kahler geometry and quantization of T*G"};
  app.set_version_flag("--version", std::string("quantlab ") + QUANTLAB_VERSION);
  app.require_subcommand(1);

  std::string config_path, model, model_file, suite_name, out, format, potentials;
  std::uint64_t seed = 0;
  double cutoff = 0.0;
  int level = 0, samples = 0, grid = 0, refined = 0;
  std::vector<std::string> tols;

  auto* run = app.add_subcommand("run", "run certificate suites and write a report");
  run->add_option("--config", config_path, "key=value config file")->check(CLI::ExistingFile);
  run->add_option("--model", model, "u1, t2 or su2");
  run->add_option("--model-file", model_file, "structure-constant model file")->check(CLI::ExistingFile);
  run->add_option("--suite", suite_name, "kahler, psh, transform, reduction, density or all");
  run->add_option("--out", out, "report path");
  run->add_option("--format", format, "json or csv");
  run->add_option("--seed", seed, "RNG seed");
  run->add_option("--cutoff", cutoff, "representation cutoff (model default when omitted)");
  run->add_option("--level", level, "quadrature level multiplier");
  run->add_option("--samples", samples, "random samples for the reduction suite");
  run->add_option("--potentials", potentials, "semicolon-separated PSH potentials");
  run->add_option("--density-grid", grid, "cells per axis of the density demo grid");
  run->add_option("--density-refined-grid", refined, "refinement grid (0 disables)");
  run->add_option("--tol", tols, "tolerance override id=value (repeatable)");

  std::string emit_in = "report.json", emit_format = "svg", emit_out;
  auto* emit = app.add_subcommand("emit", "convert a JSON report to json, csv or svg plots");
  emit->add_option("--in", emit_in, "input JSON report")->capture_default_str();
  emit->add_option("--format", emit_format, "json, csv or svg")->capture_default_str();
  emit->add_option("--out", emit_out, "output file (json/csv) or directory (svg)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run) {
      suite::SuiteConfig cfg = config_path.empty() ? suite::SuiteConfig{} : suite::SuiteConfig::from_file(config_path);
      if (run->count("--model")) cfg.set("model", model);
      if (run->count("--model-file")) cfg.set("model_file", model_file);
      if (run->count("--suite")) cfg.set("suite", suite_name);
      if (run->count("--out")) cfg.set("out", out);
      if (run->count("--format")) cfg.set("format", format);
      if (run->count("--seed")) cfg.seed = seed;
      if (run->count("--cutoff")) cfg.cutoff = cutoff;
      if (run->count("--level")) cfg.level = level;
      if (run->count("--samples")) cfg.samples = samples;
      if (run->count("--potentials")) cfg.set("potentials", potentials);
      if (run->count("--density-grid")) cfg.density_grid = grid;
      if (run->count("--density-refined-grid")) cfg.density_refined_grid = refined;
      for (const auto& t : tols) suite::parse_tolerance_override(t, cfg.tolerances);
      const auto reports = suite::run_suite(cfg);
      suite::write_report(reports, cfg.format, cfg.out);
      print_reports(reports);
      std::printf("report written to %s\n", cfg.out.c_str());
      return all_pass(reports) ? kOk : kCheckFailure;
    }
    const auto reports = suite::read_report(emit_in);
    if (emit_format == "svg") {
      const auto files = suite::emit_svg(reports, emit_out.empty() ? "plots" : emit_out);
      for (const auto& f : files) std::printf("%s\n", f.string().c_str());
    } else if (emit_format == "json" || emit_format == "csv") {
      if (emit_out.empty()) std::cout << (emit_format == "json" ? suite::emit_json(reports) : suite::emit_csv(reports));
      else suite::write_report(reports, emit_format, emit_out);
    } else {
      throw UsageError("format must be json, csv or svg");
    }
    return kOk;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kUsage;
  } catch (const ModelError& e) {
    std::fprintf(stderr, "model error: %s\n", e.what());
    return kUsage;
  } catch (const IoError& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return kUsage;
  }
}
