#include <cmath>

#include "doctest.h"
#include "quantlab/reduction.hpp"

using namespace quantlab;
using namespace quantlab::reduction;

namespace {

ReducedRepresentative rep_at(const LieModel& m, double angle, double y) {
  ReducedRepresentative r;
  r.t = m.torus_point(Vec::Constant(1, angle));
  r.y0 = Vec::Constant(1, y);
  r.conjugator = m.identity();
  return r;
}

}  // namespace

TEST_CASE("momentum map worked example") {
  const auto m = LieModel::su2();
  const GroupPoint g = m.exp_alg(m.basis_vector(2) * (kPi / 2.0));
  const AlgebraVec j = momentum_map(m, {g, m.basis_vector(0)});
  AlgebraVec expected(3);
  expected << -1.0, 1.0, 0.0;
  CHECK((j - expected).norm() < 1e-14);
  CHECK(std::abs(j.norm() - std::sqrt(2.0)) < 1e-14);
  CHECK_THROWS_AS(ZeroSetPoint::make(m, {g, m.basis_vector(0)}), UsageError);
}

TEST_CASE("zero set representatives") {
  const auto m = LieModel::su2();
  sampling::Rng rng(3);
  for (int s = 0; s < 50; ++s) {
    const double a = sampling::uniform(rng, 0.0, 2.0 * kPi);
    const double y = sampling::uniform(rng, -3.0, 3.0);
    const auto canon = weyl_canonicalize(m, rep_at(m, a, y));
    CHECK(canon.y0(0) >= 0.0);
    const GroupPoint k = sampling::group_point(m, rng);
    const kahler::BasePoint p{GroupPoint{k.matrix * canon.t.matrix * k.matrix.adjoint()},
                              m.adjoint_action(k, m.embed_torus(canon.y0))};
    const auto z = ZeroSetPoint::make(m, p);
    const auto r = weyl_canonicalize(m, torus_representative(m, z));
    CHECK(representative_distance(r, canon) < 1e-9);
    CHECK(r.residual < 1e-10);
  }
}

TEST_CASE("Weyl canonicalization on the wall") {
  const auto m = LieModel::su2();
  const auto r = weyl_canonicalize(m, rep_at(m, 4.0, 0.0));
  CHECK(std::abs(r.angles()(0) - (2.0 * kPi - 4.0)) < 1e-14);
  const auto f = weyl_canonicalize(m, rep_at(m, 1.0, -2.0));
  CHECK(std::abs(f.y0(0) - 2.0) < 1e-15);
  CHECK(std::abs(f.angles()(0) - (2.0 * kPi - 1.0)) < 1e-14);
}

TEST_CASE("strata") {
  const auto m = LieModel::su2();
  for (double a : {0.0, kPi}) {
    const auto tag = stratum_classify(m, rep_at(m, a, 0.0));
    CHECK(tag.isotropy_dim == 3);
    CHECK_FALSE(tag.principal);
  }
  const auto generic = stratum_classify(m, rep_at(m, 0.9, 0.4));
  CHECK(generic.isotropy_dim == 1);
  CHECK(generic.principal);
  CHECK(generic.distance_to_singular > 0.1);
  CHECK(stratum_classify(m, rep_at(m, 0.0, 1.3)).principal);
  CHECK(stratum_classify(m, rep_at(m, 2.0, 0.0)).principal);
  const auto t2 = LieModel::t2();
  ReducedRepresentative r;
  r.t = t2.identity();
  r.y0 = Vec::Zero(2);
  CHECK(stratum_classify(t2, r).principal);
}

TEST_CASE("reduction of characters is an isometry") {
  const auto m = LieModel::su2();
  for (std::size_t b = 0; b < 5; ++b) {
    const auto s = reduction_unitary(m, transform::PeterWeylVector::character(m, 2.0, b), 12);
    CHECK(std::abs(torus_gram({s})(0, 0) - 1.0) < 1e-12);
  }
  sampling::Rng rng(2);
  CHECK_THROWS_AS(reduction_unitary(m, transform::PeterWeylVector::random(m, 1.0, rng), 8), UsageError);
}

TEST_CASE("quantization commutes with reduction") {
  for (const auto& m : {LieModel::u1(), LieModel::su2()}) {
    const double cut = m.name() == "su2" ? 1.0 : 4.0;
    const auto s = qr_sides(m, cut, 1, 40);
    CHECK(s.dims_a == s.dims_b);
    CHECK((s.gram_a - CMat::Identity(s.gram_a.rows(), s.gram_a.rows())).cwiseAbs().maxCoeff() < 1e-4);
    CHECK((s.gram_b - CMat::Identity(s.gram_b.rows(), s.gram_b.rows())).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(s.weyl_defect < 1e-10);
  }
}

TEST_CASE("certificates") {
  ReductionConfig cfg;
  cfg.samples = 2000;
  for (const auto& m : {LieModel::u1(), LieModel::t2(), LieModel::su2()}) {
    for (const auto& r : {momentum_equivariance_certificate(m, cfg), round_trip_certificate(m, cfg),
                          stratification_certificate(m, cfg), weyl_isometry_certificate(m, cfg),
                          qr_commutes_certificate(m, cfg)}) {
      INFO(m.name() << " " << r.check_id << " err=" << r.max_error << " " << r.metadata.dump().substr(0, 800));
      CHECK(r.pass);
    }
  }
  const auto strata = stratification_certificate(LieModel::su2(), cfg);
  CHECK(strata.metadata["singular_points"] == 2);
  CHECK(stratification_certificate(LieModel::t2(), cfg).metadata["singular_points"] == 0);
}
