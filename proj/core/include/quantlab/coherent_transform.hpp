#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "quantlab/check_report.hpp"
#include "quantlab/irrep.hpp"
#include "quantlab/quadrature.hpp"
#include "quantlab/sampling.hpp"

namespace quantlab::transform {

/// N = 8 for u1, 4 for t2, j <= 2 for su2.
double default_cutoff(const LieModel& m);

/// ||pi(e^{iY})^{-1}||_HS^2 from the eigenvalues of the hermitian matrix i pi(Y).
double hs_norm_sq_inverse(const Irrep& p, const AlgebraVec& y);

/// sigma(pi) = (1/dim) int ||pi(e^{iY})^{-1}||_HS^2 e^{-2 pi |Y|^2} dY.
/// Radial Gauss-Legendre for su2, product Gauss-Hermite for tori.
double sigma(const LieModel& m, const Irrep& p, int level);
/// Completed-square closed forms.
double sigma_closed_form(const LieModel& m, const Irrep& p);
/// Full-dimensional Gauss-Hermite through the representation matrix itself.
double sigma_full_gaussian(const LieModel& m, const Irrep& p, int level);
/// Gaussian-sampled Monte Carlo estimate with its standard error.
std::pair<double, double> sigma_monte_carlo(const LieModel& m, const Irrep& p, int samples, std::uint64_t seed);
/// psi_k(t) = prod_{j < rank} t_jj^{k_j} on the diagonal torus of the defining representation.
cd torus_character(const std::vector<int>& k, const CMat& t);
/// torus_point(angles) e^{i y} in T^C.
CMat torus_complex_point(const LieModel& m, const Vec& angles, const Vec& y);
/// All k in Z^rank with |k_i| <= bound.
std::vector<std::vector<int>> lattice_box(int rank, int bound);

/// sigma of the torus character psi_k(t) = prod_{j < rank} t_jj^{k_j} of T.
double sigma_torus(const LieModel& m, const std::vector<int>& k);

struct SigmaTable {
  std::map<std::string, double> values;
  std::string rule;
  int level = 0;
  double error_estimate = 0.0;  // max relative change under level doubling

  double at(const Irrep& p) const;
  nlohmann::json to_json() const;
  static SigmaTable build(const LieModel& m, const std::vector<Irrep>& irreps, int level = 40);
};

/// f(x) = sum_pi sqrt(dim) sum_ij C_pi(i, j) pi(x)_ij, orthonormal in L^2(G) under probability Haar.
struct PeterWeylVector {
  std::vector<Irrep> irreps;
  std::vector<CMat> coeffs;
  double cutoff = 0.0;

  static PeterWeylVector zero(const LieModel& m, double cutoff);
  static PeterWeylVector character(const LieModel& m, double cutoff, std::size_t block);
  static PeterWeylVector random(const LieModel& m, double cutoff, sampling::Rng& rng);

  double norm2() const;
  /// Holomorphic extension evaluated at a point of G^C.
  cd operator()(const CMat& g) const;
  /// x -> f(h1^{-1} x h2)
  PeterWeylVector translated(const CMat& h1, const CMat& h2) const;
  /// max distance of each block from a multiple of the identity
  double class_defect() const;
};

/// Blockwise multiplication by sigma^{-1/2}.
PeterWeylVector transform_C_phi(const PeterWeylVector& f, const SigmaTable& s);

/// sum_pi dim / sqrt(sigma) tr pi(t^{-1}).
cd phi_kernel(const std::vector<Irrep>& irreps, const SigmaTable& s, const CMat& t);

/// Probability Haar nodes as matrices of the defining representation.
struct GroupRule {
  std::vector<CMat> points;
  Vec weights;
};
GroupRule haar_rule(const LieModel& m, double level);

/// int_G f(x) phi(x^{-1} t) dx.
cd transform_by_quadrature(const LieModel& m, const PeterWeylVector& f, const SigmaTable& s, const CMat& t);

/// exp(-2 pi |Y|^2) dY on g: spherical rule for su2 (levels scale with `level`), Gauss-Hermite for tori.
QuadratureRule algebra_rule(const LieModel& m, double cutoff, int level);

struct GramResult {
  CMat gram;
  double dropped = 0.0;  // largest Haar cross-moment treated as zero
  double leakage = 0.0;  // largest Gram entry between different irreps
};

/// Gram of F_{pi,ij}(x e^{iY}) = scale_pi sqrt(dim) pi(x e^{iY})_ij in L^2(G x g, weight dx dY),
/// with the dY weights taken from `yrule`. Basis order: block, then i, then j.
GramResult hl2_gram(const LieModel& m, const std::vector<Irrep>& irreps, const std::vector<double>& scales,
                    const QuadratureRule& yrule);
/// Restriction of a full matrix-coefficient Gram to the normalized characters chi / sqrt(dim).
CMat character_gram(const std::vector<Irrep>& irreps, const CMat& full);

struct TransformConfig {
  std::uint64_t seed = 20240607;
  double cutoff = -1.0;  // model default when negative
  int level = 1;
  int sigma_level = 40;
  int samples = 20;
  int mc_samples = 50000;
};

CheckReport sigma_certificate(const LieModel& m, const TransformConfig& cfg);
CheckReport unitarity_certificate(const LieModel& m, const TransformConfig& cfg);
CheckReport direct_transform_certificate(const LieModel& m, const TransformConfig& cfg);
CheckReport equivariance_certificate(const LieModel& m, const TransformConfig& cfg);
CheckReport weyl_equivariance_certificate(const LieModel& m, const TransformConfig& cfg);
CheckReport spin_weighted_gram_certificate(const LieModel& m, const TransformConfig& cfg);

}  // namespace quantlab::transform
