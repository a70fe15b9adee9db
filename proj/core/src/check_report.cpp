#include "quantlab/check_report.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace quantlab {

CheckReport CheckReport::make(std::string id, std::string citation, double tolerance, double max_error,
                              nlohmann::json metadata) {
  CheckReport r;
  r.check_id = std::move(id);
  r.citation = std::move(citation);
  r.tolerance = tolerance;
  r.max_error = max_error;
  r.metadata = std::move(metadata);
  r.settle();
  return r;
}

void CheckReport::settle() { pass = std::isfinite(max_error) && max_error <= tolerance; }

nlohmann::json CheckReport::to_json() const {
  nlohmann::json j;
  j["check_id"] = check_id;
  j["citation"] = citation;
  j["tolerance"] = tolerance;
  // JSON has no NaN/inf; an unusable error is written as null and read back as +inf
  if (std::isfinite(max_error)) j["max_error"] = max_error;
  else j["max_error"] = nullptr;
  j["pass"] = pass;
  j["metadata"] = metadata;
  return j;
}

CheckReport CheckReport::from_json(const nlohmann::json& j) {
  CheckReport r;
  r.check_id = j.at("check_id").get<std::string>();
  r.citation = j.at("citation").get<std::string>();
  r.tolerance = j.at("tolerance").get<double>();
  r.max_error = j.at("max_error").is_null() ? INFINITY : j.at("max_error").get<double>();
  r.pass = j.at("pass").get<bool>();
  r.metadata = j.at("metadata");
  return r;
}

bool CheckReport::operator==(const CheckReport& o) const {
  const bool same_err = (max_error == o.max_error) || (std::isnan(max_error) && std::isnan(o.max_error));
  return check_id == o.check_id && citation == o.citation && tolerance == o.tolerance && same_err &&
         pass == o.pass && metadata == o.metadata;
}

bool all_pass(const ReportList& reports) {
  for (const auto& r : reports)
    if (!r.pass) return false;
  return true;
}

nlohmann::json matrix_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(row);
  }
  return rows;
}

nlohmann::json matrix_json(const Eigen::MatrixXcd& m) {
  return {{"re", matrix_json(Eigen::MatrixXd(m.real()))}, {"im", matrix_json(Eigen::MatrixXd(m.imag()))}};
}

}  // namespace quantlab
