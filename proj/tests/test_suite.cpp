#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "quantlab/suite.hpp"

using namespace quantlab;
using namespace quantlab::suite;

namespace {

std::filesystem::path temp(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

SuiteConfig quick(const std::string& model, const std::string& suite) {
  SuiteConfig c;
  c.model = model;
  c.suite = suite;
  c.density_grid = 256;
  c.density_refined_grid = 512;
  c.samples = 500;
  return c;
}

std::size_t csv_columns(const std::string& line) {
  std::size_t cols = 1;
  bool quoted = false;
  for (char ch : line) {
    if (ch == '"') quoted = !quoted;
    else if (ch == ',' && !quoted) ++cols;
  }
  return cols;
}

}  // namespace

TEST_CASE("config file and overrides") {
  const auto path = temp("quantlab_cfg_test.txt");
  {
    std::ofstream out(path);
    out << "# comment\nmodel = u1\nsuite=psh\nseed=42\ncutoff = 3.5\ntol.psh.mu_equivariance = 1e-6\n\n"
        << "potentials = square; combined:1,2\n";
  }
  const auto c = SuiteConfig::from_file(path);
  CHECK(c.model == "u1");
  CHECK(c.suite == "psh");
  CHECK(c.seed == 42);
  CHECK(c.cutoff == 3.5);
  CHECK(c.tolerances.at("psh.mu_equivariance") == 1e-6);
  CHECK(c.potentials == std::vector<std::string>{"square", "combined:1,2"});
  {
    std::ofstream out(path);
    out << "unknown_key=1\n";
  }
  CHECK_THROWS_AS(SuiteConfig::from_file(path), UsageError);
  {
    std::ofstream out(path);
    out << "level\n";
  }
  CHECK_THROWS_AS(SuiteConfig::from_file(path), UsageError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(SuiteConfig::from_file(path), UsageError);

  std::map<std::string, double> tols;
  parse_tolerance_override("a.b=0.5", tols);
  CHECK(tols.at("a.b") == 0.5);
  CHECK_THROWS_AS(parse_tolerance_override("a.b=-1", tols), UsageError);
  CHECK_THROWS_AS(parse_tolerance_override("a.b", tols), UsageError);
  CHECK_THROWS_AS(parse_tolerance_override("a.b=x", tols), UsageError);
}

TEST_CASE("invalid selections are usage errors") {
  auto c = quick("e8", "psh");
  CHECK_THROWS_AS(run_suite(c), UsageError);
  c = quick("su2", "nonsense");
  CHECK_THROWS_AS(run_suite(c), UsageError);
  c = quick("u1", "psh");
  c.tolerances["no.such.check"] = 1.0;
  CHECK_THROWS_AS(run_suite(c), UsageError);
  c = quick("u1", "psh");
  c.level = 0;
  CHECK_THROWS_AS(run_suite(c), UsageError);
}

TEST_CASE("kahler suite wiring") {
  const auto reports = run_suite(quick("su2", "kahler"));
  bool found = false;
  for (const auto& r : reports) {
    CHECK(r.pass);
    CHECK_FALSE(r.citation.empty());
    CHECK(r.metadata["seed"] == 20240607);
    if (r.check_id == "kahler.completeness") {
      found = true;
      CHECK(r.metadata["bound"] == 4.0);
    }
  }
  CHECK(found);
}

TEST_CASE("tolerance override re-settles the verdict") {
  auto c = quick("su2", "psh");
  c.tolerances["psh.oracle_equivalence"] = 1e-14;
  const auto reports = run_suite(c);
  for (const auto& r : reports)
    if (r.check_id == "psh.oracle_equivalence") {
      CHECK(r.tolerance == 1e-14);
      CHECK_FALSE(r.pass);
      CHECK(r.metadata["default_tolerance"] == 1e-4);
    }
  CHECK_FALSE(all_pass(reports));
}

TEST_CASE("deterministic reports and emitters") {
  const auto a = run_suite(quick("u1", "all"));
  const auto b = run_suite(quick("u1", "all"));
  CHECK(all_pass(a));
  CHECK(emit_json(a) == emit_json(b));

  const auto back = parse_json(emit_json(a));
  REQUIRE(back.size() == a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    INFO(a[i].check_id << " " << a[i].metadata.dump() << " vs " << back[i].metadata.dump());
    CHECK(back[i] == a[i]);
  }

  std::istringstream csv(emit_csv(a));
  std::string line;
  std::size_t rows = 0;
  while (std::getline(csv, line)) {
    CHECK(csv_columns(line) == 6);
    ++rows;
  }
  CHECK(rows == a.size() + 1);

  const auto dir = temp("quantlab_svg_test");
  std::filesystem::remove_all(dir);
  const auto files = emit_svg(a, dir);
  CHECK(files.size() >= 3);
  for (const auto& f : files) {
    std::ifstream in(f);
    std::string first;
    std::getline(in, first);
    CHECK(first.rfind("<svg", 0) == 0);
  }
  CHECK(std::filesystem::exists(dir / "summary.svg"));
  CHECK(std::filesystem::exists(dir / "density_E.svg"));
  std::filesystem::remove_all(dir);

  const auto path = temp("quantlab_report_test.json");
  write_report(a, "json", path);
  CHECK(read_report(path).size() == a.size());
  std::filesystem::remove(path);
}

TEST_CASE("emitter errors") {
  CHECK_THROWS_AS(emit_json({}), UsageError);
  CHECK_THROWS_AS(emit_csv({}), UsageError);
  CHECK_THROWS_AS(emit_svg({}, temp("quantlab_empty_svg")), UsageError);
  const ReportList one{CheckReport::make("x", "y", 1.0, 0.5)};
  CHECK_THROWS_AS(write_report(one, "json", "/nonexistent/dir/r.json"), IoError);
  CHECK_THROWS_AS(parse_json("{not json"), UsageError);
  CHECK_THROWS_AS(parse_json("{}"), UsageError);
}

TEST_CASE("non-finite errors survive the round trip") {
  const ReportList r{CheckReport::make("x", "anchor", 1e-3, INFINITY)};
  const auto back = parse_json(emit_json(r));
  CHECK(std::isinf(back[0].max_error));
  CHECK_FALSE(back[0].pass);
  CHECK(emit_csv(r).find(",inf,false,") != std::string::npos);
}

TEST_CASE("file models run the geometric suite only") {
  const auto path = temp("quantlab_suite_so3.txt");
  {
    std::ofstream out(path);
    out << "name so3\ndim 3\nbracket 1 2 3 1\nbracket 2 3 1 1\nbracket 3 1 2 1\ntorus 3\nroot 1\n";
  }
  auto c = quick("su2", "all");
  c.model_file = path.string();
  CHECK(c.selected_suites() == std::vector<std::string>{"kahler"});
  const auto reports = run_suite(c);
  CHECK(reports.size() == 7);
  CHECK(all_pass(reports));
  c.suite = "reduction";
  CHECK_THROWS_AS(run_suite(c), UsageError);
  std::filesystem::remove(path);
}
