#pragma once

#include <cstdint>
#include <functional>

#include "quantlab/check_report.hpp"
#include "quantlab/lie_core.hpp"

namespace quantlab::kahler {

struct BasePoint {
  GroupPoint x;
  AlgebraVec y;
};

/// Left-trivialized tangent vector (X1, X2) in g x g.
struct TangentPair {
  AlgebraVec x1;
  AlgebraVec x2;

  Vec stacked() const;
  static TangentPair unstack(const Vec& v);
};

/// Complex covector in the {alpha_k, dy_k} frame.
struct CovectorPair {
  CVec a;
  CVec b;

  CVec stacked() const;
  cd operator()(const TangentPair& v) const;
};

using ScalarField = std::function<double(const GroupPoint&, const AlgebraVec&)>;

inline constexpr double kFdStep = 1e-5;

double theta_form(const LieModel& m, const BasePoint& p, const TangentPair& v);
double omega_form(const LieModel& m, const BasePoint& p, const TangentPair& v, const TangentPair& w);
/// omega(v, w) = v^T Omega w on stacked pairs.
Mat omega_matrix(const LieModel& m, const AlgebraVec& y);

/// Left-trivialized differential of (x, Y) -> x e^{iY}, mapping (X1, X2) to the
/// (real, imaginary) parts of t^{-1} dt in g + i g.
Mat dphi_matrix(const LieModel& m, const AlgebraVec& y);
/// Smallest singular value of dphi_matrix; values below 1e-12 mean the matrix is
/// numerically singular at y.
double dphi_min_singular_value(const LieModel& m, const AlgebraVec& y);
/// t^{-1} dt by central differences of the matrix-valued polar map.
Mat dphi_finite_difference(const LieModel& m, const BasePoint& p, double h = kFdStep);

/// (T Phi)^{-1} J_e (T Phi) in closed form.
Mat complex_structure_J(const LieModel& m, const AlgebraVec& y);
/// The same J through an explicit inverse of dphi_matrix.
Mat complex_structure_J_conjugated(const LieModel& m, const AlgebraVec& y);

/// Gram matrix of g(v, w) = omega(Jv, w).
Mat metric_matrix(const LieModel& m, const AlgebraVec& y);
double metric_g(const LieModel& m, const BasePoint& p, const TangentPair& v, const TangentPair& w);

/// Real differential in the {alpha_k, dy_k} frame: group directions x exp(s e_k), flat directions Y + s e_k.
Vec differential(const LieModel& m, const ScalarField& f, const BasePoint& p, double h = kFdStep);

/// (1/2)(df - i J df) with (J a)(X) = -a(JX).
CovectorPair dbar_function(const LieModel& m, const ScalarField& f, const BasePoint& p, double h = kFdStep);
CovectorPair dbar_from_differential(const LieModel& m, const AlgebraVec& y, const Vec& df);
/// pi^{(0,1)} theta = (1/2)(theta - i J theta).
CovectorPair theta_01(const LieModel& m, const AlgebraVec& y);

/// |Y|^2 read off from a point M of G^C by the polar decomposition M = x e^{iY}.
double potential_at(const LieModel& m, const CMat& point);

/// omega at (e, y) expressed in the holomorphic chart z -> e^{iY} exp(sum z_k e_k),
/// versus -i d dbar |Y|^2 from Richardson-extrapolated second differences (steps h and h/2)
/// in that chart. Returns the max abs entry of the difference of the two real 2n x 2n matrices.
double kahler_potential_residual(const LieModel& m, const AlgebraVec& y, double h = 2e-3);

struct ClosednessResidual {
  double dtheta_minus_omega;
  double domega;
};

/// Palais-formula exterior derivatives along left-invariant / constant fields u, v, w.
ClosednessResidual closedness_residual(const LieModel& m, const BasePoint& p, const TangentPair& u,
                                       const TangentPair& v, const TangentPair& w, double h = kFdStep);

/// ||df||_g^2 for f = log(1 + |Y|^2): via the metric applied to finite-difference
/// df^#, and in closed form 4|Y|^2 / (1 + |Y|^2)^2.
std::pair<double, double> completeness_pair(const LieModel& m, const AlgebraVec& y);

struct KahlerConfig {
  std::uint64_t seed = 20240607;
  int j_samples = 10000;
  int completeness_samples = 100000;
  int oracle_samples = 1000;
  int potential_samples = 64;
  double max_radius = 20.0;
};

CheckReport completeness_certificate(const LieModel& m, const KahlerConfig& cfg);
CheckReport j_squared_certificate(const LieModel& m, const KahlerConfig& cfg);
CheckReport dphi_oracle_certificate(const LieModel& m, const KahlerConfig& cfg);
CheckReport potential_certificate(const LieModel& m, const KahlerConfig& cfg);
CheckReport closedness_certificate(const LieModel& m, const KahlerConfig& cfg);
CheckReport compatibility_certificate(const LieModel& m, const KahlerConfig& cfg);
CheckReport dbar_certificate(const LieModel& m, const KahlerConfig& cfg);

}  // namespace quantlab::kahler
