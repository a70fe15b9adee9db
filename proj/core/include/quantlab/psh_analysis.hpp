#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "quantlab/check_report.hpp"
#include "quantlab/kahler_geom.hpp"
#include "quantlab/lie_core.hpp"

namespace quantlab::psh {

/// Weyl-invariant function K~ on t with its gradient and Hessian.
struct InvariantPotential {
  std::string name;
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> gradient;
  std::function<Mat(const Vec&)> hessian;

  static InvariantPotential square(const LieModel& m, double scale = 1.0);
  static InvariantPotential log_eta(const LieModel& m);
  static InvariantPotential combined(const LieModel& m, double a, double b);
  /// sum of cos over torus coordinates
  static InvariantPotential cosine(const LieModel& m);
  /// Cubic B-spline through equispaced samples on [x0, x0 + h (n-1)], rank-1 models only.
  static InvariantPotential tabulated(const LieModel& m, double x0, double h, std::vector<double> values);
  /// Two-column text file "t value" with equispaced t.
  static InvariantPotential from_table_file(const LieModel& m, const std::filesystem::path& path);
  /// "square", "neg_square", "logeta", "cos", "combined:a,b", "table:<path>".
  static InvariantPotential by_name(const LieModel& m, const std::string& spec);
};

/// max |K~(w t) - K~(t)| over sampled t and Weyl w.
double weyl_invariance_defect(const LieModel& m, const InvariantPotential& k, std::uint64_t seed, int samples = 200);

/// The equivariant extension mu(g, Y) = Ad_g grad K(Y) with grad K(Ad_h t) = Ad_h grad K~(t).
AlgebraVec mu_gradient(const LieModel& m, const InvariantPotential& k, const kahler::BasePoint& p);

struct RootValue {
  Vec root;
  double value;
  bool limit_used;
};

struct SpectrumReport {
  Vec point;
  std::vector<double> hessian_eigenvalues;
  std::vector<RootValue> root_eigenvalues;
  double min_eigenvalue = 0.0;
  double oracle_residual = -1.0;  // filled by compare_with_oracle

  /// Hessian and root values together, sorted.
  std::vector<double> all() const;
};

inline constexpr double kRootGuard = 1e-6;

SpectrumReport theta_spectrum(const LieModel& m, const InvariantPotential& k, const Vec& t);
/// Root value through the footnote rewriting (alpha(mu)/alpha(Y)) (alpha coth alpha + alpha),
/// with alpha(mu)/alpha(Y) replaced by its Hessian limit.
double root_value_limit_form(const LieModel& m, const InvariantPotential& k, const Vec& t, const RealRoot& a);

/// Theta - i ad mu at (e, Y), assembled from finite differences of mu along the
/// horizontal directions J X* and the connection reading theta(J X*).
CMat theta_matrix_oracle(const LieModel& m, const InvariantPotential& k, const Vec& t, double h = 1e-5);

/// Relative multiset distance between the closed-form spectrum and the oracle eigenvalues.
double spectrum_distance(const std::vector<double>& a, const std::vector<double>& b);

std::vector<Vec> torus_grid(const LieModel& m, double radius, int per_axis);

struct PshConfig {
  std::uint64_t seed = 20240607;
  double radius = 5.0;
  int per_axis = 101;
  int oracle_points = 60;
  double psh_tol = 1e-8;
  double twist_margin = 1e-4;
  std::vector<std::pair<double, double>> twist_presets = {{2.0 * kPi, 2.0}, {2.0 * kPi, 1.0}};
};

CheckReport psh_verdict(const LieModel& m, const InvariantPotential& k, const PshConfig& cfg);
CheckReport canonical_semi_negativity_certificate(const LieModel& m, const PshConfig& cfg);
CheckReport twist_positivity_certificate(const LieModel& m, double a, double b, const PshConfig& cfg);
CheckReport oracle_equivalence_certificate(const LieModel& m, const PshConfig& cfg);
CheckReport limit_consistency_certificate(const LieModel& m, const PshConfig& cfg);
CheckReport mu_equivariance_certificate(const LieModel& m, const PshConfig& cfg);

}  // namespace quantlab::psh
