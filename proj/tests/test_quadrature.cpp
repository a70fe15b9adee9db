#include <cmath>

#include "doctest.h"
#include "quantlab/irrep.hpp"
#include "quantlab/quadrature.hpp"
#include "quantlab/sampling.hpp"

using namespace quantlab;

TEST_CASE("masses") {
  CHECK(std::abs(quad::torus_rule(1, 5).total_mass() - 1.0) < 1e-15);
  CHECK(std::abs(quad::torus_rule(2, 3).total_mass() - 1.0) < 1e-15);
  CHECK(std::abs(quad::su2_haar_rule(2.0).total_mass() - 1.0) < 1e-14);
  CHECK(std::abs(quad::gauss_hermite_gaussian(20).total_mass() - 1.0 / std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(quad::gaussian_rule(3, 12).total_mass() - std::pow(2.0, -1.5)) < 1e-14);
  for (const auto& r : {quad::torus_rule(2, 4), quad::su2_haar_rule(1.5), quad::gaussian_rule(2, 9)})
    CHECK(r.weights.minCoeff() >= 0.0);
}

TEST_CASE("trapezoid exactness on torus characters") {
  const auto r = quad::torus_rule(1, 6);
  for (int n = -6; n <= 6; ++n) {
    const cd v = r.integrate_complex([&](const Vec& t) { return std::polar(1.0, n * t(0)); });
    CHECK(std::abs(v - (n == 0 ? 1.0 : 0.0)) < 1e-14);
  }
}

TEST_CASE("Gauss-Hermite moments of exp(-2 pi y^2)") {
  const auto r = quad::gauss_hermite_gaussian(10);
  // E[y^2] under the normalized Gaussian is 1/(4 pi)
  const double m2 = r.integrate([](const Vec& y) { return y(0) * y(0); });
  CHECK(std::abs(m2 - (1.0 / std::sqrt(2.0)) / (4.0 * kPi)) < 1e-15);
  const double m4 = r.integrate([](const Vec& y) { return std::pow(y(0), 4); });
  CHECK(std::abs(m4 - (1.0 / std::sqrt(2.0)) * 3.0 / (16.0 * kPi * kPi)) < 1e-15);
}

TEST_CASE("Gauss-Legendre integrates polynomials") {
  const auto r = quad::gauss_legendre(5, -1.0, 2.0);
  const double v = r.integrate([](const Vec& x) { return std::pow(x(0), 9); });
  CHECK(std::abs(v - (std::pow(2.0, 10) - 1.0) / 10.0) < 1e-11);
}

TEST_CASE("Euler angle parametrization is SU(2)") {
  const auto m = LieModel::su2();
  const CMat g = quad::su2_euler(0.3, 1.1, -2.0);
  const CMat expected = m.exp_alg(0.3 * m.basis_vector(2)).matrix * m.exp_alg(1.1 * m.basis_vector(1)).matrix *
                        m.exp_alg(-2.0 * m.basis_vector(2)).matrix;
  CHECK((g - expected).norm() < 1e-14);
}

TEST_CASE("Schur orthogonality through the SU(2) rule") {
  const auto m = LieModel::su2();
  const auto irreps = Irrep::up_to(m, 2.0);
  const auto r = quad::su2_haar_rule(4.0);
  double worst = 0.0;
  for (const auto& a : irreps)
    for (const auto& b : irreps) {
      cd s = 0.0;
      for (Eigen::Index i = 0; i < r.size(); ++i) {
        const CMat g = quad::su2_euler(r.nodes(0, i), r.nodes(1, i), r.nodes(2, i));
        s += r.weights(i) * a.character(g) * std::conj(b.character(g));
      }
      worst = std::max(worst, std::abs(s - (a.label() == b.label() ? 1.0 : 0.0)));
    }
  CHECK(worst < 1e-12);

  // loose Monte Carlo cross-check with Haar samples from normalized quaternions
  sampling::Rng rng(11);
  const auto& a = irreps[2];
  double acc = 0.0;
  const int n = 200000;
  for (int s = 0; s < n; ++s) {
    const Vec q = sampling::unit_vector(rng, 4);
    CMat g(2, 2);
    g << cd(q(0), q(1)), cd(q(2), q(3)), cd(-q(2), q(3)), cd(q(0), -q(1));
    acc += std::norm(a.character(g));
  }
  CHECK(std::abs(acc / n - 1.0) < 0.02);
}

TEST_CASE("matrix coefficients integrate exactly at the declared level") {
  const auto m = LieModel::su2();
  const auto r = quad::su2_haar_rule(2.0);
  for (const auto& p : Irrep::up_to(m, 2.0)) {
    CMat acc = CMat::Zero(p.dim(), p.dim());
    for (Eigen::Index i = 0; i < r.size(); ++i) acc += r.weights(i) * p(quad::su2_euler(r.nodes(0, i), r.nodes(1, i), r.nodes(2, i)));
    const double expected = p.dim() == 1 ? 1.0 : 0.0;
    CHECK(std::abs(acc(0, 0) - expected) < 1e-13);
    CHECK(acc.cwiseAbs().maxCoeff() - (p.dim() == 1 ? 1.0 : 0.0) < 1e-13);
  }
}

TEST_CASE("doubling gate") {
  auto eval = [](int level) {
    const auto r = quad::gauss_hermite_gaussian(level);
    return CMat::Constant(1, 1, r.integrate([](const Vec& y) { return std::cos(y(0)); }));
  };
  const auto d = quad::doubling_gate(eval, 20);
  CHECK(d.change < 1e-9);
  CHECK(std::abs(d.value(0, 0).real() - std::exp(-1.0 / (8.0 * kPi)) / std::sqrt(2.0)) < 1e-13);
}
