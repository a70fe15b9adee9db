#pragma once

#include <cstdint>
#include <vector>

#include "quantlab/check_report.hpp"
#include "quantlab/coherent_transform.hpp"
#include "quantlab/kahler_geom.hpp"

namespace quantlab::reduction {

inline constexpr double kZeroSetTol = 1e-9;
inline constexpr double kStratumThreshold = 1e-8;

/// j(g, Y) = Ad_g Y - Y.
AlgebraVec momentum_map(const LieModel& m, const kahler::BasePoint& p);

struct ZeroSetPoint {
  kahler::BasePoint p;
  double residual = 0.0;

  /// Throws UsageError unless |j(p)| < kZeroSetTol.
  static ZeroSetPoint make(const LieModel& m, const kahler::BasePoint& p);
};

/// (h g h^{-1}, Ad_h Y) = (t, Y0) with t in T and Y0 in t.
struct ReducedRepresentative {
  GroupPoint t;
  Vec y0;              // torus coordinates
  GroupPoint conjugator;
  bool weyl_canonical = false;
  double residual = 0.0;  // distance of (h g h^{-1}, Ad_h Y) from T x t

  /// Diagonal angles of t in [0, 2 pi).
  Vec angles() const;
};

ReducedRepresentative torus_representative(const LieModel& m, const ZeroSetPoint& z);

/// su2: y >= 0, with angle in [0, pi] on the wall y = 0. Tori: angles reduced to [0, 2 pi).
ReducedRepresentative weyl_canonicalize(const LieModel& m, const ReducedRepresentative& r);

/// Angle-aware distance between two representatives (max over angle and y coordinates).
double representative_distance(const ReducedRepresentative& a, const ReducedRepresentative& b);

struct StratumTag {
  int isotropy_dim = 0;
  bool principal = false;
  double distance_to_singular = 0.0;  // the singular value that vanishes on the singular set
  bool ambiguous = false;             // a singular value within a factor 10 of the threshold
};

StratumTag stratum_classify(const LieModel& m, const ReducedRepresentative& r);

/// Samples of R f = |W|^{-1/2} |delta| f|_T on the nodes of a torus rule.
struct TorusSamples {
  QuadratureRule rule;
  CVec values;
};

/// Throws UsageError if f is not a class function.
TorusSamples reduction_unitary(const LieModel& m, const transform::PeterWeylVector& f, int modes);
/// L^2(T) Gram by the sampling rule (all samples share one rule).
CMat torus_gram(const std::vector<TorusSamples>& fs);

struct ReductionConfig {
  std::uint64_t seed = 20240607;
  double cutoff = -1.0;  // model default when negative
  int samples = 10000;
  int level = 1;
  int sigma_level = 40;
  double isometry_cutoff = 3.0;
};

CheckReport momentum_equivariance_certificate(const LieModel& m, const ReductionConfig& cfg);
CheckReport round_trip_certificate(const LieModel& m, const ReductionConfig& cfg);
CheckReport stratification_certificate(const LieModel& m, const ReductionConfig& cfg);
CheckReport weyl_isometry_certificate(const LieModel& m, const ReductionConfig& cfg);

struct QrSides {
  CMat gram_a;  // reduction after quantization
  CMat gram_b;  // quantization after reduction
  std::vector<int> dims_a;
  std::vector<int> dims_b;
  double weyl_defect = 0.0;
};

/// Both orthonormal systems in L^2(T)^W at the given cutoff.
QrSides qr_sides(const LieModel& m, double cutoff, int level, int sigma_level);
CheckReport qr_commutes_certificate(const LieModel& m, const ReductionConfig& cfg);

}  // namespace quantlab::reduction
