#include <cmath>
#include <fstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "doctest.h"
#include "quantlab/lie_core.hpp"
#include "quantlab/sampling.hpp"

using namespace quantlab;

namespace {

const cd kI(0.0, 1.0);

Vec v3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

}  // namespace

TEST_CASE("su2 bracket follows the basis normalization") {
  const auto m = LieModel::su2();
  CHECK((m.bracket(m.basis_vector(0), m.basis_vector(1)) - m.basis_vector(2)).norm() < 1e-14);
  CHECK((m.bracket(m.basis_vector(1), m.basis_vector(2)) - m.basis_vector(0)).norm() < 1e-14);
  CHECK((m.bracket(m.basis_vector(2), m.basis_vector(0)) - m.basis_vector(1)).norm() < 1e-14);
  const Vec x = v3(0.3, -1.2, 2.0);
  CHECK(m.bracket(x, x).norm() < 1e-15);
}

TEST_CASE("bracket agrees with the matrix commutator") {
  const auto m = LieModel::su2();
  sampling::Rng rng(1);
  for (int s = 0; s < 50; ++s) {
    const Vec x = sampling::gaussian_vector(rng, 3), y = sampling::gaussian_vector(rng, 3);
    const CMat cx = m.to_matrix(x), cy = m.to_matrix(y);
    const CMat comm = cx * cy - cy * cx;
    CHECK((m.to_matrix(m.bracket(x, y)) - comm).norm() < 1e-13);
  }
}

TEST_CASE("torus models are abelian") {
  for (const auto& m : {LieModel::u1(), LieModel::t2()}) {
    sampling::Rng rng(2);
    const Vec x = sampling::gaussian_vector(rng, m.dim()), y = sampling::gaussian_vector(rng, m.dim());
    CHECK(m.bracket(x, y).norm() == 0.0);
    CHECK((m.adjoint_action(sampling::group_point(m, rng), y) - y).norm() < 1e-14);
    CHECK(m.weyl_group().size() == 1);
  }
}

TEST_CASE("bracket dimension mismatch is a usage error") {
  const auto m = LieModel::su2();
  CHECK_THROWS_AS(m.bracket(Vec::Zero(2), Vec::Zero(3)), UsageError);
}

TEST_CASE("structural residuals") {
  for (const auto& m : {LieModel::u1(), LieModel::t2(), LieModel::su2()}) {
    CHECK(m.jacobi_residual() < 1e-12);
    CHECK(m.antisymmetry_residual() < 1e-12);
    CHECK(m.ad_invariance_residual() < 1e-12);
    CHECK(m.torus_commutation_residual() < 1e-12);
    CHECK((m.inner() - Mat::Identity(m.dim(), m.dim())).norm() < 1e-14);
  }
}

TEST_CASE("Ad of exp(t e3) rotates e1 toward e2") {
  const auto m = LieModel::su2();
  for (double t : {0.0, 0.4, 1.3, 2.9, -0.7}) {
    const GroupPoint g = m.exp_alg(t * m.basis_vector(2));
    // oracle: conjugation in the defining representation, then read coordinates
    const CMat conj = g.matrix * m.basis_matrices()[0] * g.matrix.adjoint();
    const Vec oracle = v3(-2.0 * (conj * m.basis_matrices()[0]).trace().real(),
                          -2.0 * (conj * m.basis_matrices()[1]).trace().real(),
                          -2.0 * (conj * m.basis_matrices()[2]).trace().real());
    const Vec got = m.adjoint_action(g, m.basis_vector(0));
    CHECK((got - v3(std::cos(t), std::sin(t), 0.0)).norm() < 1e-13);
    CHECK((got - oracle).norm() < 1e-13);
  }
}

TEST_CASE("Ad is orthogonal on many random group points") {
  const auto m = LieModel::su2();
  sampling::Rng rng(3);
  double worst = 0.0;
  for (int s = 0; s < 10000; ++s) {
    const Mat a = m.adjoint_matrix(sampling::group_point(m, rng));
    worst = std::max(worst, (a.transpose() * a - Mat::Identity(3, 3)).cwiseAbs().maxCoeff());
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("adjoint action rejects non-unitary points") {
  const auto m = LieModel::su2();
  const GroupPoint g = m.exp_alg(Vec::Zero(3), v3(0.0, 0.0, 1.0));
  CHECK_THROWS_AS(m.adjoint_action(g, m.basis_vector(0)), UsageError);
}

TEST_CASE("exponential") {
  const auto su2 = LieModel::su2();
  CHECK((su2.exp_alg(Vec::Zero(3), Vec::Zero(3)).matrix - CMat::Identity(2, 2)).norm() < 1e-15);
  sampling::Rng rng(4);
  for (int s = 0; s < 20; ++s) {
    const Vec axis = sampling::unit_vector(rng, 3);
    CHECK((su2.exp_alg(2.0 * kPi * axis).matrix + CMat::Identity(2, 2)).norm() < 1e-12);
    // |Y| = pi in the <X,Y> = -2 tr(XY) norm rotates by pi in SO(3)
    const Mat ad = su2.adjoint_matrix(su2.exp_alg(kPi * axis));
    CHECK((ad - (2.0 * axis * axis.transpose() - Mat::Identity(3, 3))).norm() < 1e-12);
    const Vec y = sampling::gaussian_vector(rng, 3);
    CHECK(su2.unitarity_residual(su2.exp_alg(y)) < 1e-12);
    CHECK(std::abs(su2.exp_alg(y).matrix.determinant() - 1.0) < 1e-12);
    const CMat h = su2.exp_alg(Vec::Zero(3), y).matrix;
    CHECK((h - h.adjoint()).norm() < 1e-12);
    CHECK(Eigen::SelfAdjointEigenSolver<CMat>(h).eigenvalues().minCoeff() > 0.0);
  }
  const auto u1 = LieModel::u1();
  for (double th : {0.0, 0.5, 3.0}) {
    CHECK(std::abs(u1.exp_alg(Vec::Constant(1, th)).matrix(0, 0) - std::polar(1.0, th)) < 1e-14);
  }
}

TEST_CASE("su2 exp of length-pi vectors in the defining normalization") {
  // exp(Y) = -I exactly when the eigenvalues of Y are +-i pi, i.e. |Y| = 2 pi here
  const auto m = LieModel::su2();
  const CMat y = m.to_matrix(v3(0.0, 2.0 * kPi, 0.0));
  CHECK((y.exp() + CMat::Identity(2, 2)).norm() < 1e-12);
}

TEST_CASE("roots and Weyl group of su2") {
  const auto m = LieModel::su2();
  REQUIRE(m.roots().size() == 2);
  REQUIRE(m.positive_roots().size() == 1);
  const auto w = m.weyl_group();
  REQUIRE(w.size() == 2);
  CHECK(w[0].determinant() == 1);
  CHECK(w[1].determinant() == -1);
  CHECK(std::abs(w[1].matrix(0, 0) + 1.0) < 1e-15);
  // Weyl elements permute the root set
  for (const auto& el : w)
    for (const auto& a : m.roots()) {
      const Vec image = el.matrix.transpose() * a.covector;
      bool found = false;
      for (const auto& b : m.roots()) found = found || (image - b.covector).norm() < 1e-12;
      CHECK(found);
    }
  // ad(Y) on the complexified algebra has eigenvalues 0, +-i alpha(Y)
  for (double y : {0.3, 1.0, 4.2}) {
    const Vec t = Vec::Constant(1, y);
    const Eigen::VectorXcd ev = m.ad(m.embed_torus(t)).eigenvalues();
    std::vector<double> im;
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
      CHECK(std::abs(ev(k).real()) < 1e-10);
      im.push_back(ev(k).imag());
    }
    std::sort(im.begin(), im.end());
    CHECK(std::abs(im[0] + m.positive_roots()[0](t)) < 1e-10);
    CHECK(std::abs(im[1]) < 1e-10);
    CHECK(std::abs(im[2] - m.positive_roots()[0](t)) < 1e-10);
  }
  // the normalizer lift realizes the reflection
  const GroupPoint n = m.weyl_lift(w[1]);
  CHECK((m.adjoint_action(n, m.basis_vector(2)) + m.basis_vector(2)).norm() < 1e-12);
}

TEST_CASE("torus points and lattice") {
  const auto m = LieModel::su2();
  const CMat t = m.torus_point(Vec::Constant(1, 0.7)).matrix;
  CHECK(std::abs(t(0, 0) - std::polar(1.0, 0.7)) < 1e-14);
  CHECK(std::abs(t(1, 1) - std::polar(1.0, -0.7)) < 1e-14);
  const auto t2 = LieModel::t2();
  Vec ang(2);
  ang << 0.3, -1.1;
  const CMat p = t2.torus_point(ang).matrix;
  CHECK(std::abs(p(0, 0) - std::polar(1.0, 0.3)) < 1e-14);
  CHECK(std::abs(p(1, 1) - std::polar(1.0, -1.1)) < 1e-14);
}

TEST_CASE("conjugation to the torus") {
  const auto m = LieModel::su2();
  sampling::Rng rng(5);
  for (int s = 0; s < 100; ++s) {
    const Vec y = sampling::gaussian_vector(rng, 3);
    const auto c = m.conjugate_to_torus(y);
    CHECK((m.adjoint_action(c.h, m.embed_torus(c.torus_part)) - y).norm() < 1e-12);
  }
  const auto c = m.conjugate_to_torus(v3(0, 0, -2.0));
  CHECK((m.adjoint_action(c.h, m.embed_torus(c.torus_part)) - v3(0, 0, -2.0)).norm() < 1e-12);
}

TEST_CASE("model lookup and file models") {
  CHECK(LieModel::by_name("su2").dim() == 3);
  CHECK_THROWS_AS(LieModel::by_name("e8"), UsageError);

  const auto path = std::filesystem::temp_directory_path() / "quantlab_so3_model.txt";
  {
    std::ofstream out(path);
    out << "# so(3) with [e_i, e_j] = eps_ijk e_k\n"
           "name so3\n"
           "dim 3\n"
           "bracket 1 2 3 1\n"
           "bracket 2 3 1 1\n"
           "bracket 3 1 2 1\n"
           "torus 3\n"
           "root 1\n";
  }
  const auto m = LieModel::from_file(path);
  CHECK(m.name() == "so3");
  CHECK(m.rank() == 1);
  CHECK(m.weyl_group().size() == 2);
  CHECK((m.bracket(m.basis_vector(1), m.basis_vector(0)) + m.basis_vector(2)).norm() < 1e-15);
  CHECK(m.unitarity_residual(m.exp_alg(v3(0.2, 0.5, -0.1))) < 1e-12);
  std::filesystem::remove(path);

  const auto bad = std::filesystem::temp_directory_path() / "quantlab_bad_model.txt";
  {
    std::ofstream out(bad);
    out << "dim 3\nbracket 1 2 3 1\nbracket 2 3 1 2\nbracket 3 1 2 1\ntorus 3\n";
  }
  CHECK_THROWS_AS(LieModel::from_file(bad), ModelError);
  std::filesystem::remove(bad);
  CHECK_THROWS_AS(LieModel::from_file("/nonexistent/model.txt"), UsageError);
}
