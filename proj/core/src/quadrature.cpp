#include "quantlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include <gsl/gsl_integration.h>

namespace quantlab {

double QuadratureRule::integrate(const std::function<double(const Vec&)>& f) const {
  double s = 0.0;
  for (Eigen::Index i = 0; i < size(); ++i) s += weights(i) * f(nodes.col(i));
  return s;
}

cd QuadratureRule::integrate_complex(const std::function<cd(const Vec&)>& f) const {
  cd s = 0.0;
  for (Eigen::Index i = 0; i < size(); ++i) s += weights(i) * f(nodes.col(i));
  return s;
}

namespace quad {

namespace {

struct FixedDeleter {
  void operator()(gsl_integration_fixed_workspace* w) const { gsl_integration_fixed_free(w); }
};

QuadratureRule from_gsl(const gsl_integration_fixed_type* type, int n, double a, double b, const std::string& name) {
  if (n < 1) throw UsageError(name + ": need at least one node");
  std::unique_ptr<gsl_integration_fixed_workspace, FixedDeleter> w(
      gsl_integration_fixed_alloc(type, static_cast<size_t>(n), a, b, 0.0, 0.0));
  if (!w) throw std::runtime_error(name + ": GSL allocation failed");
  QuadratureRule r;
  r.nodes.resize(1, n);
  r.weights.resize(n);
  const double* x = gsl_integration_fixed_nodes(w.get());
  const double* wt = gsl_integration_fixed_weights(w.get());
  for (int i = 0; i < n; ++i) {
    r.nodes(0, i) = x[i];
    r.weights(i) = wt[i];
  }
  r.name = name;
  r.exact_degree = 2 * n - 1;
  return r;
}

}  // namespace

QuadratureRule gauss_legendre(int n, double a, double b) {
  return from_gsl(gsl_integration_fixed_legendre, n, a, b, "gauss-legendre");
}

QuadratureRule gauss_hermite_gaussian(int n) {
  // GSL hermite: weight exp(-b (x - a)^2); b = 2 pi gives the target weight directly
  return from_gsl(gsl_integration_fixed_hermite, n, 0.0, 2.0 * kPi, "gauss-hermite(exp(-2 pi y^2))");
}

QuadratureRule torus_rule(int rank, int modes) {
  if (rank < 1 || modes < 0) throw UsageError("torus_rule: rank >= 1 and modes >= 0 required");
  const int m = modes + 1;
  Eigen::Index count = 1;
  for (int i = 0; i < rank; ++i) count *= m;
  QuadratureRule r;
  r.nodes.resize(rank, count);
  r.weights = Vec::Constant(count, 1.0 / static_cast<double>(count));
  for (Eigen::Index c = 0; c < count; ++c) {
    Eigen::Index rest = c;
    for (int i = 0; i < rank; ++i) {
      r.nodes(i, c) = 2.0 * kPi * static_cast<double>(rest % m) / m;
      rest /= m;
    }
  }
  r.name = "torus-trapezoid";
  r.exact_degree = modes;
  return r;
}

QuadratureRule su2_haar_rule(double jmax) {
  if (jmax < 0) throw UsageError("su2_haar_rule: jmax must be non-negative");
  const int two_j = static_cast<int>(std::ceil(2.0 * jmax - 1e-12));
  const int m = two_j + 1;
  const int n = two_j / 2 + 1;
  const QuadratureRule gl = gauss_legendre(n, -1.0, 1.0);
  QuadratureRule r;
  r.nodes.resize(3, static_cast<Eigen::Index>(m) * m * n);
  r.weights.resize(r.nodes.cols());
  Eigen::Index c = 0;
  for (int a = 0; a < m; ++a)
    for (int k = 0; k < n; ++k)
      for (int g = 0; g < m; ++g) {
        r.nodes(0, c) = 4.0 * kPi * a / m;
        r.nodes(1, c) = std::acos(gl.nodes(0, k));
        r.nodes(2, c) = 4.0 * kPi * g / m;
        r.weights(c) = gl.weights(k) / (2.0 * m * m);
        ++c;
      }
  r.name = "su2-euler(trapezoid x gauss-legendre(cos beta) x trapezoid)";
  r.exact_degree = two_j;
  return r;
}

QuadratureRule gaussian_rule(int rank, int level) {
  if (rank < 1 || level < 1) throw UsageError("gaussian_rule: rank >= 1 and level >= 1 required");
  const QuadratureRule gh = gauss_hermite_gaussian(level);
  Eigen::Index count = 1;
  for (int i = 0; i < rank; ++i) count *= level;
  QuadratureRule r;
  r.nodes.resize(rank, count);
  r.weights.resize(count);
  for (Eigen::Index c = 0; c < count; ++c) {
    Eigen::Index rest = c;
    double w = 1.0;
    for (int i = 0; i < rank; ++i) {
      const Eigen::Index k = rest % level;
      r.nodes(i, c) = gh.nodes(0, k);
      w *= gh.weights(k);
      rest /= level;
    }
    r.weights(c) = w;
  }
  r.name = "gauss-hermite-product";
  r.exact_degree = 2 * level - 1;
  return r;
}

QuadratureRule radial_rule(int level, double radius, const std::function<double(double)>& density) {
  QuadratureRule r = gauss_legendre(level, 0.0, radius);
  for (Eigen::Index i = 0; i < r.size(); ++i) r.weights(i) *= density(r.nodes(0, i));
  r.name = "radial-gauss-legendre";
  return r;
}

QuadratureRule spherical_gaussian_rule(int radial, double radius, int n_cos, int n_phi) {
  if (radial < 1 || n_cos < 1 || n_phi < 1 || radius <= 0.0) throw UsageError("spherical_gaussian_rule: bad levels");
  const QuadratureRule r = gauss_legendre(radial, 0.0, radius);
  const QuadratureRule c = gauss_legendre(n_cos, -1.0, 1.0);
  QuadratureRule out;
  const Eigen::Index count = r.size() * c.size() * n_phi;
  out.nodes.resize(3, count);
  out.weights.resize(count);
  Eigen::Index k = 0;
  for (Eigen::Index a = 0; a < r.size(); ++a) {
    const double rho = r.nodes(0, a);
    const double wr = r.weights(a) * rho * rho * std::exp(-2.0 * kPi * rho * rho);
    for (Eigen::Index b = 0; b < c.size(); ++b) {
      const double ct = c.nodes(0, b), st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
      for (int p = 0; p < n_phi; ++p) {
        const double ph = 2.0 * kPi * p / n_phi;
        out.nodes.col(k) << rho * st * std::cos(ph), rho * st * std::sin(ph), rho * ct;
        out.weights(k) = wr * c.weights(b) * 2.0 * kPi / n_phi;
        ++k;
      }
    }
  }
  out.name = "spherical-gaussian";
  out.exact_degree = std::min(2 * n_cos - 1, n_phi - 1);
  return out;
}

double gaussian_cutoff_radius(double growth) {
  const double c = std::log(1e20);
  return (growth + std::sqrt(growth * growth + 8.0 * kPi * c)) / (4.0 * kPi);
}

CMat su2_euler(double alpha, double beta, double gamma) {
  // exp(a e3) = diag(e^{-ia/2}, e^{ia/2}), exp(b e2) = [[cos b/2, -sin b/2], [sin b/2, cos b/2]]
  const cd ea = std::polar(1.0, -alpha / 2), eg = std::polar(1.0, -gamma / 2);
  const double c = std::cos(beta / 2), s = std::sin(beta / 2);
  CMat m(2, 2);
  m(0, 0) = ea * c * eg;
  m(0, 1) = -ea * s * std::conj(eg);
  m(1, 0) = std::conj(ea) * s * eg;
  m(1, 1) = std::conj(ea) * c * std::conj(eg);
  return m;
}

Doubling doubling_gate(const std::function<CMat(int)>& eval, int level) {
  const CMat a = eval(level);
  const CMat b = eval(2 * level);
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::logic_error("doubling_gate: shape changed");
  const double change = a.size() == 0 ? 0.0 : (a - b).cwiseAbs().maxCoeff();
  return {b, change, 2 * level};
}

}  // namespace quad
}  // namespace quantlab
