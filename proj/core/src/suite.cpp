#include "quantlab/suite.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <sstream>

#include "quantlab/coherent_transform.hpp"
#include "quantlab/density_weights.hpp"
#include "quantlab/kahler_geom.hpp"
#include "quantlab/psh_analysis.hpp"
#include "quantlab/reduction.hpp"
#include "quantlab/stratum_density.hpp"

namespace quantlab::suite {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    throw UsageError(key + ": expected a number, got '" + v + "'");
  }
  if (used != v.size()) throw UsageError(key + ": expected a number, got '" + v + "'");
  return x;
}

int to_int(const std::string& key, const std::string& v) {
  const double x = to_double(key, v);
  if (x != std::floor(x) || std::abs(x) > 1e9) throw UsageError(key + ": expected an integer, got '" + v + "'");
  return static_cast<int>(x);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep))
    if (!trim(item).empty()) out.push_back(trim(item));
  return out;
}

std::string listing() {
  std::string known;
  for (const auto& n : suite_names()) known += n + ", ";
  return known + "all";
}

ReportList kahler_suite(const LieModel& m, const SuiteConfig& c) {
  kahler::KahlerConfig k;
  k.seed = c.seed;
  return {kahler::j_squared_certificate(m, k),    kahler::dphi_oracle_certificate(m, k),
          kahler::potential_certificate(m, k),    kahler::completeness_certificate(m, k),
          kahler::closedness_certificate(m, k),   kahler::compatibility_certificate(m, k),
          kahler::dbar_certificate(m, k)};
}

ReportList psh_suite(const LieModel& m, const SuiteConfig& c) {
  psh::PshConfig p;
  p.seed = c.seed;
  ReportList out;
  for (const auto& name : c.potentials) out.push_back(psh::psh_verdict(m, psh::InvariantPotential::by_name(m, name), p));
  out.push_back(psh::canonical_semi_negativity_certificate(m, p));
  for (const auto& [a, b] : p.twist_presets) out.push_back(psh::twist_positivity_certificate(m, a, b, p));
  out.push_back(psh::oracle_equivalence_certificate(m, p));
  out.push_back(psh::limit_consistency_certificate(m, p));
  out.push_back(psh::mu_equivariance_certificate(m, p));
  return out;
}

ReportList transform_suite(const LieModel& m, const SuiteConfig& c) {
  transform::TransformConfig t;
  t.seed = c.seed;
  t.cutoff = c.cutoff;
  t.level = c.level;
  return {transform::sigma_certificate(m, t),        transform::unitarity_certificate(m, t),
          transform::direct_transform_certificate(m, t), transform::equivariance_certificate(m, t),
          transform::weyl_equivariance_certificate(m, t), transform::spin_weighted_gram_certificate(m, t)};
}

ReportList reduction_suite(const LieModel& m, const SuiteConfig& c) {
  reduction::ReductionConfig r;
  r.seed = c.seed;
  r.cutoff = c.cutoff;
  r.level = c.level;
  r.samples = c.samples;
  return {reduction::momentum_equivariance_certificate(m, r), reduction::round_trip_certificate(m, r),
          reduction::stratification_certificate(m, r),        reduction::weyl_isometry_certificate(m, r),
          reduction::qr_commutes_certificate(m, r)};
}

ReportList density_suite(const LieModel& m, const SuiteConfig& c) {
  density::DensityConfig d;
  d.seed = c.seed;
  ReportList out{density::eta_log_convexity_certificate(d), density::log_eta_hessian_certificate(m, d),
                 density::haar_liouville_certificate(m, d), density::weyl_integration_certificate(m, d)};
  stratum::StratumConfig s;
  s.grid = c.density_grid;
  s.refined_grid = c.density_refined_grid;
  for (auto& r : stratum::density_certificates(stratum::removal_density_demo(s))) out.push_back(std::move(r));
  out.push_back(stratum::norm_equivalence_certificate(512));
  return out;
}

ReportList run_one(const std::string& name, const LieModel& m, const SuiteConfig& c) {
  if (name == "kahler") return kahler_suite(m, c);
  if (name == "psh") return psh_suite(m, c);
  if (name == "transform") return transform_suite(m, c);
  if (name == "reduction") return reduction_suite(m, c);
  if (name == "density") return density_suite(m, c);
  throw UsageError("unknown suite '" + name + "' (suites: " + listing() + ")");
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"kahler", "psh", "transform", "reduction", "density"};
  return names;
}

void SuiteConfig::set(const std::string& raw_key, const std::string& raw_value) {
  const std::string key = trim(raw_key), value = trim(raw_value);
  if (key.rfind("tol.", 0) == 0) {
    parse_tolerance_override(key.substr(4) + "=" + value, tolerances);
  } else if (key == "model") {
    model = value;
  } else if (key == "model_file") {
    model_file = value;
  } else if (key == "suite") {
    suite = value;
  } else if (key == "seed") {
    const double s = to_double(key, value);
    if (s < 0.0 || s != std::floor(s) || s > 1.8e19) throw UsageError("seed: expected a non-negative integer");
    seed = std::stoull(value);
  } else if (key == "cutoff") {
    cutoff = to_double(key, value);
  } else if (key == "level") {
    level = to_int(key, value);
  } else if (key == "samples") {
    samples = to_int(key, value);
  } else if (key == "potentials") {
    potentials = split(value, ';');
  } else if (key == "density_grid") {
    density_grid = to_int(key, value);
  } else if (key == "density_refined_grid") {
    density_refined_grid = to_int(key, value);
  } else if (key == "out") {
    out = value;
  } else if (key == "format") {
    format = value;
  } else {
    throw UsageError("unknown config key '" + key + "'");
  }
}

SuiteConfig SuiteConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path.string());
  SuiteConfig c;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(path.string() + ":" + std::to_string(lineno) + ": expected key=value");
    c.set(line.substr(0, eq), line.substr(eq + 1));
  }
  return c;
}

void SuiteConfig::validate() const {
  if (suite != "all" && std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
    throw UsageError("unknown suite '" + suite + "' (suites: " + listing() + ")");
  for (const auto& [id, t] : tolerances)
    if (!(t > 0.0) || !std::isfinite(t)) throw UsageError("tolerance for " + id + " must be positive");
  if (level < 1 || level > 8) throw UsageError("level must lie in [1, 8]");
  if (samples < 1) throw UsageError("samples must be positive");
  if (!std::isfinite(cutoff)) throw UsageError("cutoff must be finite");
  if (density_grid < 64) throw UsageError("density_grid must be at least 64");
  if (density_refined_grid != 0 && density_refined_grid <= density_grid)
    throw UsageError("density_refined_grid must exceed density_grid (or be 0)");
  if (format != "json" && format != "csv") throw UsageError("format must be json or csv");
  if (potentials.empty()) throw UsageError("at least one potential is required");
}

std::vector<std::string> SuiteConfig::selected_suites() const {
  if (suite != "all") return {suite};
  if (model_file.empty()) return suite_names();
  return {"kahler"};
}

void parse_tolerance_override(const std::string& spec, std::map<std::string, double>& into) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0) throw UsageError("tolerance override must look like id=value: " + spec);
  const std::string id = trim(spec.substr(0, eq));
  const double v = to_double("tolerance " + id, trim(spec.substr(eq + 1)));
  if (!(v > 0.0) || !std::isfinite(v)) throw UsageError("tolerance for " + id + " must be positive");
  into[id] = v;
}

ReportList run_suite(const SuiteConfig& cfg) {
  cfg.validate();
  const LieModel model = cfg.model_file.empty() ? LieModel::by_name(cfg.model) : LieModel::from_file(cfg.model_file);
  const auto names = cfg.selected_suites();
  if (!model.has_torus_lattice())
    for (const auto& n : names)
      if (n != "kahler") throw UsageError("suite '" + n + "' needs a built-in model (u1, t2, su2)");
  std::vector<std::future<ReportList>> jobs;
  for (const auto& n : names)
    jobs.push_back(std::async(std::launch::async, [n, model, &cfg] { return run_one(n, model, cfg); }));
  ReportList out;
  for (auto& j : jobs)
    for (auto& r : j.get()) out.push_back(std::move(r));
  for (auto& r : out) {
    r.metadata["seed"] = cfg.seed;
    if (!r.metadata.contains("model")) r.metadata["model"] = model.name();
  }
  for (const auto& [id, t] : cfg.tolerances) {
    bool hit = false;
    for (auto& r : out)
      if (r.check_id == id) {
        r.metadata["default_tolerance"] = r.tolerance;
        r.tolerance = t;
        r.settle();
        hit = true;
      }
    if (!hit) {
      std::string ids;
      for (const auto& r : out) ids += (ids.empty() ? "" : ", ") + r.check_id;
      throw UsageError("tolerance override for unknown check '" + id + "' (checks: " + ids + ")");
    }
  }
  return out;
}

std::string emit_json(const ReportList& reports) {
  if (reports.empty()) throw UsageError("no reports to emit");
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) arr.push_back(r.to_json());
  return arr.dump(2) + "\n";
}

ReportList parse_json(const std::string& text) {
  nlohmann::json arr;
  try {
    arr = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("report is not valid JSON: ") + e.what());
  }
  if (!arr.is_array()) throw UsageError("report must be a JSON array");
  ReportList out;
  try {
    for (const auto& j : arr) out.push_back(CheckReport::from_json(j));
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("malformed report entry: ") + e.what());
  }
  return out;
}

std::string emit_csv(const ReportList& reports) {
  if (reports.empty()) throw UsageError("no reports to emit");
  std::ostringstream os;
  os << "check_id,citation,tolerance,max_error,pass,metadata\n";
  for (const auto& r : reports)
    os << csv_field(r.check_id) << "," << csv_field(r.citation) << "," << number(r.tolerance) << ","
       << number(r.max_error) << "," << (r.pass ? "true" : "false") << "," << csv_field(r.metadata.dump()) << "\n";
  return os.str();
}

void write_report(const ReportList& reports, const std::string& format, const std::filesystem::path& path) {
  std::string text;
  if (format == "json") text = emit_json(reports);
  else if (format == "csv") text = emit_csv(reports);
  else throw UsageError("format must be json or csv");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

ReportList read_report(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

}  // namespace quantlab::suite
