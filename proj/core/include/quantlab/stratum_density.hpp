#pragma once

#include <functional>
#include <string>
#include <vector>

#include "quantlab/check_report.hpp"
#include "quantlab/types.hpp"

namespace quantlab::stratum {

/// Complex samples at the cell centres of a uniform n x n grid over [-1, 1]^2, row-major in y.
struct GridField {
  int n = 0;
  double h = 0.0;
  std::vector<cd> values;

  static GridField sample(int n, const std::function<cd(double, double)>& f);
  double coord(int i) const { return -1.0 + (i + 0.5) * h; }
  cd at(int ix, int iy) const;  // zero outside the grid
};

/// Squared pieces of the grid norms with central differences.
struct NormParts {
  double l2_sq = 0.0;
  double dx_sq = 0.0;
  double dy_sq = 0.0;
  double dbar_sq = 0.0;  // |(1/2)(d_x + i d_y) f|^2

  double h1() const;
  /// (|f|^2 + 2 |dbar f|^2)^{1/2}
  double graph() const;
};

/// Throws UsageError when |f| > 1e-12 on the two outermost grid layers.
NormParts norm_parts(const GridField& f);
double h1_norm(const GridField& f);
double dolbeault_graph_norm(const GridField& f);
/// Same stencil as norm_parts, sweeping rows without storing the grid.
NormParts streamed_norm_parts(int n, const std::function<cd(double, double)>& f);

/// 1/sqrt2 |f|_H1 <= graph norm <= |f|_H1.
inline constexpr double kEquivalenceLower = 0.70710678118654752;
inline constexpr double kEquivalenceUpper = 1.0;

/// clamp(log(m^2 d) / log m, 0, 1) for the distance d to the removed set.
double cutoff_profile(double m, double d);
/// e exp(-1 / (1 - (r / radius)^2)) centred at (cx, cy); equals 1 at the centre.
double bump(double x, double y, double radius, double cx = 0.0, double cy = 0.0);

enum class Removed { point, line };

struct StratumConfig {
  int grid = 2048;
  int refined_grid = 4096;
  std::vector<double> log_m{1.0, 2.0, 3.0, 4.0};
  double bump_radius = 0.5;
  double resolve_cells = 2.0;  // inner radius must span this many cells
};

/// E(m) = graph norm of (1 - psi_m) f for the removed set.
double removal_error(int n, double m, Removed set, double bump_radius);

struct DensityDemo {
  std::vector<double> m;
  std::vector<double> error;          // point removed, base grid
  std::vector<double> error_refined;  // point removed, refined grid
  std::vector<double> error_line;     // line removed, base grid
  std::vector<bool> resolved;
  double min_usable_m = 0.0;
  double rate = 0.0;  // p in E ~ (log m)^{-p/2}

  nlohmann::json to_json() const;
  /// m,E rows
  std::string csv() const;
};

DensityDemo removal_density_demo(const StratumConfig& cfg);

/// Strictly decreasing E, capacity rate, refinement stability, line contrast.
ReportList density_certificates(const DensityDemo& demo);
/// graph^2 - |f|^2 = (|d_x f|^2 + |d_y f|^2) / 2 for compactly supported fields.
CheckReport norm_equivalence_certificate(int n);

}  // namespace quantlab::stratum
