#pragma once

#include <functional>
#include <string>

#include "quantlab/types.hpp"

namespace quantlab {

/// Nodes are stored column-wise; weights are non-negative.
struct QuadratureRule {
  Mat nodes;
  Vec weights;
  std::string name;
  int exact_degree = 0;

  Eigen::Index size() const { return weights.size(); }
  double total_mass() const { return weights.sum(); }
  double integrate(const std::function<double(const Vec&)>& f) const;
  cd integrate_complex(const std::function<cd(const Vec&)>& f) const;
};

namespace quad {

/// Gauss-Legendre on [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);

/// Gauss-Hermite for the weight exp(-2 pi y^2) on R (mass 1/sqrt 2).
QuadratureRule gauss_hermite_gaussian(int n);

/// Probability Haar on T^r = (R / 2 pi Z)^r: product trapezoid with modes+1
/// points per axis, exact for exp(i n.theta) with |n_j| <= modes.
QuadratureRule torus_rule(int rank, int modes);

/// Probability Haar on SU(2) in Euler angles (alpha, beta, gamma),
/// g = exp(alpha e3) exp(beta e2) exp(gamma e3), alpha, gamma in [0, 4 pi).
/// Exact for the matrix coefficients of pi_j with j <= jmax.
QuadratureRule su2_haar_rule(double jmax);

/// Product Gauss-Hermite rule for exp(-2 pi |Y|^2) dY on R^r, level nodes per axis.
QuadratureRule gaussian_rule(int rank, int level);

/// Gauss-Legendre in r on [0, radius] with the weights multiplied by density(r).
QuadratureRule radial_rule(int level, double radius, const std::function<double(double)>& density);

/// exp(-2 pi |Y|^2) dY on R^3 in spherical coordinates: Gauss-Legendre in r on
/// [0, radius], Gauss-Legendre in cos(theta), trapezoid in the azimuth.
QuadratureRule spherical_gaussian_rule(int radial, double radius, int n_cos, int n_phi);

/// Radius beyond which exp(growth r - 2 pi r^2) < 1e-20.
double gaussian_cutoff_radius(double growth);

/// exp(alpha e3) exp(beta e2) exp(gamma e3) in the defining representation.
CMat su2_euler(double alpha, double beta, double gamma);

struct Doubling {
  CMat value;    // at the doubled level
  double change; // max-abs difference between the two levels
  int level;
};

/// Evaluates at level and 2 * level.
Doubling doubling_gate(const std::function<CMat(int)>& eval, int level);

}  // namespace quad
}  // namespace quantlab
