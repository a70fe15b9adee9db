#include "quantlab/analytic.hpp"

#include <cmath>

namespace quantlab::analytic {

namespace {

// Horner evaluation of sum_k c[k] w^k.
template <std::size_t N>
cd horner(const double (&c)[N], cd w) {
  cd acc = 0.0;
  for (std::size_t k = N; k-- > 0;) acc = acc * w + c[k];
  return acc;
}

}  // namespace

cd sinc(cd z) {
  if (std::abs(z) < kTaylorCut) {
    static constexpr double c[] = {1.0, -1.0 / 6, 1.0 / 120, -1.0 / 5040,
                                   1.0 / 362880, -1.0 / 39916800};
    return horner(c, z * z);
  }
  return std::sin(z) / z;
}

cd one_minus_cos_over(cd z) {
  if (std::abs(z) < kTaylorCut) {
    static constexpr double c[] = {1.0 / 2, -1.0 / 24, 1.0 / 720, -1.0 / 40320,
                                   1.0 / 3628800, -1.0 / 479001600};
    return z * horner(c, z * z);
  }
  return (1.0 - std::cos(z)) / z;
}

cd inv_sinc(cd z) {
  if (std::abs(z) < kTaylorCut) {
    static constexpr double c[] = {1.0, 1.0 / 6, 7.0 / 360, 31.0 / 15120,
                                   127.0 / 604800, 73.0 / 3421440};
    return horner(c, z * z);
  }
  return z / std::sin(z);
}

cd half_tan(cd z) {
  if (std::abs(z) < kTaylorCut) {
    static constexpr double c[] = {1.0 / 2, 1.0 / 24, 1.0 / 240, 17.0 / 40320,
                                   31.0 / 725760, 691.0 / 159667200};
    return z * horner(c, z * z);
  }
  return std::tan(z / 2.0);
}

cd tan_half_over(cd z) {
  if (std::abs(z) < kTaylorCut) {
    static constexpr double c[] = {1.0, 1.0 / 12, 1.0 / 120, 17.0 / 20160,
                                   31.0 / 362880, 691.0 / 79833600};
    return horner(c, z * z);
  }
  return std::tan(z / 2.0) / (z / 2.0);
}

double sinhc(double x) {
  const double ax = std::abs(x);
  if (ax < 1e-4) {
    const double x2 = x * x;
    return 1.0 + x2 / 6.0 * (1.0 + x2 / 20.0);
  }
  return std::sinh(ax) / ax;
}

double log_sinhc(double x) {
  const double ax = std::abs(x);
  if (ax < 1e-4) {
    const double x2 = x * x;
    return x2 / 6.0 - x2 * x2 / 180.0;
  }
  if (ax < 20.0) return std::log(std::sinh(ax) / ax);
  return ax + std::log1p(-std::exp(-2.0 * ax)) - std::log(2.0 * ax);
}

double coth_minus_inv(double x) {
  const double ax = std::abs(x);
  if (ax < 1e-3) {
    const double x2 = x * x;
    return x * (1.0 / 3.0 - x2 / 45.0 + 2.0 * x2 * x2 / 945.0);
  }
  return 1.0 / std::tanh(x) - 1.0 / x;
}

double log_sinhc_dd(double x) {
  const double ax = std::abs(x);
  if (ax < 1e-2) {
    const double x2 = x * x;
    return 1.0 / 3.0 - x2 / 15.0 + 2.0 * x2 * x2 / 189.0 - x2 * x2 * x2 / 675.0;
  }
  const double s = std::sinh(ax);
  return 1.0 / (x * x) - 1.0 / (s * s);
}

double x_coth_plus_x(double x) {
  const double ax = std::abs(x);
  if (ax < 1e-6) return 1.0 + x + x * x / 3.0;
  return x / std::tanh(x) + x;
}

Mat antisymmetric_function(const Mat& a, const std::function<cd(cd)>& f) {
  const CMat h = cd(0.0, 1.0) * a.cast<cd>();
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  // iA = V diag(l) V^H, so A = V diag(-i l) V^H.
  CVec fd(a.rows());
  for (Eigen::Index k = 0; k < a.rows(); ++k) {
    fd(k) = f(cd(0.0, -es.eigenvalues()(k)));
  }
  const CMat& v = es.eigenvectors();
  const CMat out = v * fd.asDiagonal() * v.adjoint();
  return out.real();
}

}  // namespace quantlab::analytic
