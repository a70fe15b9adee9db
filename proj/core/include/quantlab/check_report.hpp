#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace quantlab {

/// Outcome of one named verification. pass is always max_error <= tolerance.
struct CheckReport {
  std::string check_id;
  std::string citation;
  double tolerance = 0.0;
  double max_error = 0.0;
  bool pass = false;
  nlohmann::json metadata = nlohmann::json::object();

  static CheckReport make(std::string id, std::string citation, double tolerance, double max_error,
                          nlohmann::json metadata = nlohmann::json::object());

  /// Re-derives pass from the numbers; NaN errors fail.
  void settle();

  nlohmann::json to_json() const;
  static CheckReport from_json(const nlohmann::json& j);
  bool operator==(const CheckReport& other) const;
};

using ReportList = std::vector<CheckReport>;

bool all_pass(const ReportList& reports);

/// Dense matrix as nested arrays; complex matrices as {"re": ..., "im": ...}.
nlohmann::json matrix_json(const Eigen::MatrixXd& m);
nlohmann::json matrix_json(const Eigen::MatrixXcd& m);

}  // namespace quantlab
