#pragma once

#include <cstdint>
#include <functional>

#include "quantlab/check_report.hpp"
#include "quantlab/lie_core.hpp"

namespace quantlab::density {

/// prod over positive roots of sinh(alpha(t)) / alpha(t), t in torus coordinates.
double eta_torus(const LieModel& m, const Vec& t);
double log_eta_torus(const LieModel& m, const Vec& t);
/// eta at a general Y, through its torus representative.
double eta(const LieModel& m, const AlgebraVec& y);

/// |delta|^2 = prod_{alpha > 0} 4 sin^2(alpha(theta) / 2) at the torus element
/// with diagonal angles phi (see LieModel::torus_point).
double weyl_denominator_sq(const LieModel& m, const Vec& angles);

/// (sinh^2 t - t^2) / t^4 with its series near 0.
double log_convexity_closed_form(double t);

using ClassFunction = std::function<cd(const CMat&)>;

/// int_G f dx by the Haar rule (or the torus rule for abelian models).
cd haar_integral(const LieModel& m, const ClassFunction& f, double level);
/// (1 / |W|) int_T |delta|^2 f dt.
cd weyl_integral(const LieModel& m, const ClassFunction& f, int modes);

struct DensityConfig {
  std::uint64_t seed = 20240607;
  double t_max = 6.0;
  int grid = 10000;
  double fd_step = 1e-3;
  int hessian_grid = 401;
  double hessian_radius = 5.0;
  int gh_level = 40;
  int radial_level = 60;
  double weyl_cutoff = 3.0;
};

CheckReport eta_log_convexity_certificate(const DensityConfig& cfg);
CheckReport log_eta_hessian_certificate(const LieModel& m, const DensityConfig& cfg);
CheckReport haar_liouville_certificate(const LieModel& m, const DensityConfig& cfg);
CheckReport weyl_integration_certificate(const LieModel& m, const DensityConfig& cfg);

}  // namespace quantlab::density
