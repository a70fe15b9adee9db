#include <cmath>

#include "doctest.h"
#include "quantlab/kahler_geom.hpp"
#include "quantlab/sampling.hpp"

using namespace quantlab;
using namespace quantlab::kahler;

namespace {

Vec v3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

TangentPair pair(const Vec& a, const Vec& b) { return {a, b}; }

}  // namespace

TEST_CASE("theta") {
  const auto m = LieModel::su2();
  const Vec z = Vec::Zero(3);
  CHECK(theta_form(m, {m.identity(), z}, pair(v3(1, 2, 3), v3(4, 5, 6))) == 0.0);
  CHECK(theta_form(m, {m.identity(), m.basis_vector(0)}, pair(m.basis_vector(0), v3(7, 7, 7))) == doctest::Approx(1.0));
  sampling::Rng rng(1);
  for (int s = 0; s < 20; ++s) {
    const Vec y = sampling::gaussian_vector(rng, 3), x1 = sampling::gaussian_vector(rng, 3);
    CHECK(std::abs(theta_form(m, {sampling::group_point(m, rng), y}, pair(x1, z)) - y.dot(x1)) < 1e-14);
  }
}

TEST_CASE("omega") {
  const auto m = LieModel::su2();
  const Vec z = Vec::Zero(3);
  sampling::Rng rng(2);
  const Vec y = sampling::gaussian_vector(rng, 3);
  const TangentPair v = pair(m.basis_vector(0), z), w = pair(z, m.basis_vector(0));
  CHECK(omega_form(m, {m.identity(), y}, v, w) == doctest::Approx(-1.0));
  const TangentPair a = pair(sampling::gaussian_vector(rng, 3), sampling::gaussian_vector(rng, 3));
  const TangentPair b = pair(sampling::gaussian_vector(rng, 3), sampling::gaussian_vector(rng, 3));
  const BasePoint p{m.identity(), y};
  CHECK(std::abs(omega_form(m, p, a, b) + omega_form(m, p, b, a)) < 1e-14);
  CHECK(std::abs(omega_form(m, p, a, b) - a.stacked().dot(omega_matrix(m, y) * b.stacked())) < 1e-13);
  CHECK(omega_form(m, {m.identity(), m.basis_vector(2)}, pair(m.basis_vector(0), z), pair(m.basis_vector(1), z)) ==
        doctest::Approx(-1.0));
}

TEST_CASE("dphi") {
  const auto su2 = LieModel::su2();
  CHECK((dphi_matrix(su2, Vec::Zero(3)) - Mat::Identity(6, 6)).norm() < 1e-15);
  const auto t2 = LieModel::t2();
  Vec y(2);
  y << 0.4, -3.0;
  CHECK((dphi_matrix(t2, y) - Mat::Identity(4, 4)).norm() < 1e-15);
  sampling::Rng rng(3);
  for (int s = 0; s < 50; ++s) {
    const BasePoint p{sampling::group_point(su2, rng), sampling::in_ball(rng, 3, 3.0)};
    CHECK((dphi_finite_difference(su2, p) - dphi_matrix(su2, p.y)).cwiseAbs().maxCoeff() < 1e-6);
  }
  // the Taylor branch near 0 agrees with the direct evaluation just outside it
  const Vec tiny = v3(3e-7, -2e-7, 1e-7);
  const BasePoint p0{su2.identity(), tiny};
  CHECK((dphi_finite_difference(su2, p0) - dphi_matrix(su2, tiny)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("complex structure") {
  const auto m = LieModel::su2();
  Mat je = Mat::Zero(6, 6);
  je.topRightCorner(3, 3) = -Mat::Identity(3, 3);
  je.bottomLeftCorner(3, 3) = Mat::Identity(3, 3);
  CHECK((complex_structure_J(m, Vec::Zero(3)) - je).norm() < 1e-15);
  sampling::Rng rng(4);
  for (int s = 0; s < 200; ++s) {
    const Vec y = sampling::in_ball(rng, 3, 4.0);
    const Mat j = complex_structure_J(m, y);
    CHECK((j - complex_structure_J_conjugated(m, y)).cwiseAbs().maxCoeff() < 1e-10);
    Vec in(6);
    in << Vec::Zero(3), 2.0 * y;
    Vec expected(6);
    expected << -2.0 * y, Vec::Zero(3);
    CHECK((j * in - expected).norm() < 1e-12);
  }
  // far from the origin the closed form stays an involution up to sign
  const Vec big = v3(11.0, -9.0, 7.0);
  const Mat j = complex_structure_J(m, big);
  CHECK((j * j + Mat::Identity(6, 6)).norm() < 1e-10);
}

TEST_CASE("metric") {
  const auto m = LieModel::su2();
  const BasePoint p0{m.identity(), Vec::Zero(3)};
  const TangentPair e1{m.basis_vector(0), Vec::Zero(3)};
  CHECK(metric_g(m, p0, e1, e1) == doctest::Approx(1.0));
  const Mat g = metric_matrix(m, m.basis_vector(2));
  CHECK((g - g.transpose()).norm() < 1e-13);
  CHECK(Eigen::SelfAdjointEigenSolver<Mat>(g).eigenvalues()(0) > 0.0);
}

TEST_CASE("dbar") {
  const auto m = LieModel::su2();
  const BasePoint p{m.identity(), m.basis_vector(2)};
  const ScalarField constant = [](const GroupPoint&, const AlgebraVec&) { return 3.0; };
  CHECK(dbar_function(m, constant, p).stacked().norm() < 1e-12);
  const ScalarField phi = [&m](const GroupPoint&, const AlgebraVec& y) { return kPi * m.norm2(y); };
  const auto d = dbar_function(m, phi, p);
  const cd i(0.0, 1.0);
  // (i pi Y, pi Y)
  CHECK(std::abs(d.a(2) - i * kPi) < 1e-9);
  CHECK(std::abs(d.b(2) - kPi) < 1e-9);
  CHECK(std::abs(d.a(0)) + std::abs(d.a(1)) + std::abs(d.b(0)) + std::abs(d.b(1)) < 1e-9);

  // df = dbar f + conj(dbar f) for real f
  sampling::Rng rng(5);
  const ScalarField f = [](const GroupPoint& x, const AlgebraVec& y) {
    return std::sin(y(0)) * y(1) + std::exp(0.3 * y(2)) + x.matrix(0, 1).real() * x.matrix(1, 1).imag();
  };
  for (int s = 0; s < 10; ++s) {
    const BasePoint q{sampling::group_point(m, rng), sampling::in_ball(rng, 3, 2.0)};
    const Vec df = differential(m, f, q);
    const CVec db = dbar_function(m, f, q).stacked();
    CHECK((db + db.conjugate() - df.cast<cd>()).norm() < 1e-12);
  }
}

TEST_CASE("completeness values") {
  const auto m = LieModel::su2();
  const auto [a0, b0] = completeness_pair(m, Vec::Zero(3));
  CHECK(std::abs(a0) < 1e-12);
  CHECK(b0 == 0.0);
  const auto [a1, b1] = completeness_pair(m, m.basis_vector(1));
  CHECK(std::abs(b1 - 1.0) < 1e-15);
  CHECK(std::abs(a1 - 1.0) < 1e-8);
  const auto [a20, b20] = completeness_pair(m, v3(12.0, -11.0, 10.0));
  CHECK(std::abs(a20 - b20) < 1e-8);
}

TEST_CASE("certificates pass for every built-in model") {
  KahlerConfig cfg;
  cfg.j_samples = 500;
  cfg.completeness_samples = 2000;
  cfg.oracle_samples = 100;
  cfg.potential_samples = 8;
  for (const auto& m : {LieModel::u1(), LieModel::t2(), LieModel::su2()}) {
    for (const auto& r : {completeness_certificate(m, cfg), j_squared_certificate(m, cfg), dphi_oracle_certificate(m, cfg),
                          potential_certificate(m, cfg), closedness_certificate(m, cfg),
                          compatibility_certificate(m, cfg), dbar_certificate(m, cfg)}) {
      INFO(m.name() << " " << r.check_id << " err=" << r.max_error);
      CHECK(r.pass);
    }
  }
}
