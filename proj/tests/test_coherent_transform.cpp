#include <cmath>

#include "doctest.h"
#include "quantlab/coherent_transform.hpp"

using namespace quantlab;
using namespace quantlab::transform;

TEST_CASE("sigma for u1 against the completed square") {
  const auto m = LieModel::u1();
  for (const auto& p : Irrep::up_to(m, 8.0)) {
    const double n = p.label()[0];
    const double expected = std::exp(n * n / (2.0 * kPi)) / std::sqrt(2.0);
    CHECK(std::abs(sigma_closed_form(m, p) - expected) < 1e-14 * expected);
    CHECK(std::abs(sigma(m, p, 40) - expected) < 1e-10 * expected);
  }
  CHECK(std::abs(sigma(m, Irrep::make(m, {0}), 40) - 0.70710678118654752) < 1e-14);
}

TEST_CASE("sigma for su2 by three routes") {
  const auto m = LieModel::su2();
  for (const auto& p : Irrep::up_to(m, 2.0)) {
    const double closed = sigma_closed_form(m, p);
    CHECK(std::abs(sigma(m, p, 40) - closed) < 1e-12 * closed);
    CHECK(std::abs(sigma_full_gaussian(m, p, 20) - closed) < 1e-10 * closed);
    const auto [mc, se] = sigma_monte_carlo(m, p, 50000, 9);
    CHECK(std::abs(mc - closed) <= 5.0 * se + 1e-12);
  }
  // trivial irrep: total Gaussian mass on R^3
  CHECK(std::abs(sigma_closed_form(m, Irrep::make(m, {0})) - std::pow(2.0, -1.5)) < 1e-15);
}

TEST_CASE("torus sigma of su2") {
  const auto m = LieModel::su2();
  for (int k = -4; k <= 4; ++k)
    CHECK(std::abs(sigma_torus(m, {k}) - std::exp(k * k / (8.0 * kPi)) / std::sqrt(2.0)) < 1e-14);
}

TEST_CASE("Peter-Weyl vectors") {
  const auto m = LieModel::su2();
  sampling::Rng rng(4);
  const auto f = PeterWeylVector::random(m, 1.0, rng);
  CHECK(std::abs(f.norm2() - 1.0) < 1e-14);
  // Parseval through the Haar rule
  const auto r = haar_rule(m, 2.0);
  double n2 = 0.0;
  for (std::size_t i = 0; i < r.points.size(); ++i) n2 += r.weights(static_cast<Eigen::Index>(i)) * std::norm(f(r.points[i]));
  CHECK(std::abs(n2 - 1.0) < 1e-10);
  const auto chi = PeterWeylVector::character(m, 1.0, 1);
  CHECK(chi.class_defect() < 1e-15);
  CHECK(std::abs(chi(m.identity().matrix) - 2.0) < 1e-14);
  CHECK(f.class_defect() > 1e-3);
  // translation by (e, e) is the identity
  const auto g = f.translated(m.identity().matrix, m.identity().matrix);
  for (std::size_t b = 0; b < f.coeffs.size(); ++b) CHECK((g.coeffs[b] - f.coeffs[b]).norm() < 1e-15);
  // translated evaluation
  const CMat h1 = sampling::group_point(m, rng).matrix, h2 = sampling::group_point(m, rng).matrix;
  const CMat x = sampling::group_point(m, rng).matrix;
  CHECK(std::abs(f.translated(h1, h2)(x) - f(h1.adjoint() * x * h2)) < 1e-13);
}

TEST_CASE("phi kernel for u1 matches direct summation") {
  const auto m = LieModel::u1();
  const auto irreps = Irrep::up_to(m, 8.0);
  const auto table = SigmaTable::build(m, irreps, 40);
  for (double th : {0.0, 0.7, 2.9}) {
    CMat t(1, 1);
    t(0, 0) = std::polar(1.0, th);
    cd direct = 0.0;
    for (int n = -8; n <= 8; ++n)
      direct += std::polar(1.0, -n * th) / std::sqrt(std::exp(n * n / (2.0 * kPi)) / std::sqrt(2.0));
    CHECK(std::abs(phi_kernel(irreps, table, t) - direct) < 1e-10);
  }
  // truncation tail shrinks with the cutoff
  CMat t(1, 1);
  t(0, 0) = std::polar(1.0, 0.3);
  auto tail = [&](double n) {
    const auto a = Irrep::up_to(m, n), b = Irrep::up_to(m, n + 5);
    const auto tb = SigmaTable::build(m, b, 40);
    return std::abs(phi_kernel(a, tb, t) - phi_kernel(b, tb, t));
  };
  CHECK(tail(6.0) < tail(3.0));
  for (double n : {3.0, 6.0, 8.0}) CHECK(tail(n) < 4.0 * std::exp(-(n + 1) * (n + 1) / (4.0 * kPi)));
}

TEST_CASE("C_phi on characters is diagonal") {
  for (const auto& m : {LieModel::u1(), LieModel::su2()}) {
    const double cut = m.name() == "u1" ? 8.0 : 1.0;
    const auto irreps = Irrep::up_to(m, cut);
    const auto table = SigmaTable::build(m, irreps, 40);
    sampling::Rng rng(6);
    for (std::size_t b = 0; b < irreps.size(); ++b) {
      const auto chi = PeterWeylVector::character(m, cut, b);
      const CMat t = sampling::complex_point(m, rng, 0.8).matrix;
      const cd expected = irreps[b].character(t) / std::sqrt(table.at(irreps[b]));
      CHECK(std::abs(transform_by_quadrature(m, chi, table, t) - expected) < 1e-8 * std::max(1.0, std::abs(expected)));
      CHECK(std::abs(transform_C_phi(chi, table)(t) - expected) < 1e-12 * std::max(1.0, std::abs(expected)));
    }
    const auto z = PeterWeylVector::zero(m, cut);
    CHECK(std::abs(transform_C_phi(z, table)(m.identity().matrix)) == 0.0);
  }
}

TEST_CASE("u1 translation picks up a phase per mode") {
  const auto m = LieModel::u1();
  const auto f = PeterWeylVector::character(m, 3.0, 5);  // n = 2
  CMat h(1, 1);
  h(0, 0) = std::polar(1.0, 0.4);
  const auto g = f.translated(h, m.identity().matrix);
  CHECK(std::abs(g.coeffs[5](0, 0) - std::polar(1.0, -0.8)) < 1e-14);
}

TEST_CASE("single vector and small Gram") {
  const auto m = LieModel::su2();
  const auto irreps = Irrep::up_to(m, 0.5);
  const auto table = SigmaTable::build(m, irreps, 40);
  std::vector<double> scales;
  for (const auto& p : irreps) scales.push_back(1.0 / std::sqrt(table.at(p)));
  const auto g = hl2_gram(m, irreps, scales, algebra_rule(m, 0.5, 1));
  CHECK(g.gram.rows() == 5);
  CHECK((g.gram - CMat::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(std::abs(g.gram(0, 0) - 1.0) < 1e-12);
  CHECK(g.leakage < 1e-12);
  const CMat c = character_gram(irreps, g.gram);
  CHECK((c - CMat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("certificates") {
  TransformConfig cfg;
  cfg.samples = 6;
  cfg.mc_samples = 20000;
  for (const auto& m : {LieModel::u1(), LieModel::t2(), LieModel::su2()}) {
    for (const auto& r : {sigma_certificate(m, cfg), unitarity_certificate(m, cfg), direct_transform_certificate(m, cfg),
                          equivariance_certificate(m, cfg), weyl_equivariance_certificate(m, cfg),
                          spin_weighted_gram_certificate(m, cfg)}) {
      INFO(m.name() << " " << r.check_id << " err=" << r.max_error << " " << r.metadata.dump().substr(0, 600));
      CHECK(r.pass);
    }
  }
}
