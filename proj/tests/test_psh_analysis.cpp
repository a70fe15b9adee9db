#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "quantlab/psh_analysis.hpp"
#include "quantlab/sampling.hpp"

using namespace quantlab;
using namespace quantlab::psh;

namespace {

Vec t1(double x) { return Vec::Constant(1, x); }

PshConfig quick() {
  PshConfig c;
  c.per_axis = 41;
  c.oracle_points = 12;
  return c;
}

}  // namespace

TEST_CASE("mu for the square potential is 2Y") {
  const auto m = LieModel::su2();
  const auto k = InvariantPotential::square(m);
  sampling::Rng rng(3);
  for (int s = 0; s < 50; ++s) {
    const AlgebraVec y = sampling::in_ball(rng, 3, 4.0);
    CHECK((mu_gradient(m, k, {m.identity(), y}) - 2.0 * y).norm() < 1e-12);
    const GroupPoint g = sampling::group_point(m, rng);
    CHECK((mu_gradient(m, k, {g, y}) - 2.0 * m.adjoint_action(g, y)).norm() < 1e-12);
  }
}

TEST_CASE("mu for log eta at e3") {
  const auto m = LieModel::su2();
  const auto mu = mu_gradient(m, InvariantPotential::log_eta(m), {m.identity(), m.basis_vector(2)});
  // coth 1 - 1
  CHECK(std::abs(mu(2) - 0.31303528549933130) < 1e-12);
  CHECK(std::abs(mu(0)) + std::abs(mu(1)) < 1e-12);
}

TEST_CASE("square potential spectrum at e3") {
  const auto m = LieModel::su2();
  const auto s = theta_spectrum(m, InvariantPotential::square(m), t1(1.0));
  const auto all = s.all();
  REQUIRE(all.size() == 3);
  CHECK(std::abs(all[0] - 0.626071) < 1e-6);
  CHECK(std::abs(all[1] - 2.0) < 1e-14);
  CHECK(std::abs(all[2] - 4.626071) < 1e-6);
  CHECK(std::abs(all[2] - 2.0 * (1.0 / std::tanh(1.0) + 1.0)) < 1e-14);
}

TEST_CASE("root values near the wall use the limit form") {
  const auto m = LieModel::su2();
  const auto k = InvariantPotential::square(m);
  const auto s = theta_spectrum(m, k, t1(0.0));
  for (const auto& r : s.root_eigenvalues) {
    CHECK(r.limit_used);
    CHECK(std::abs(r.value - 2.0) < 1e-14);
  }
  // continuity across the guard band
  const double inside = theta_spectrum(m, k, t1(0.9e-6)).min_eigenvalue;
  const double outside = theta_spectrum(m, k, t1(1.1e-6)).min_eigenvalue;
  CHECK(std::abs(inside - outside) < 1e-5);
  CHECK(std::abs(InvariantPotential::log_eta(m).hessian(t1(0.0))(0, 0) - 1.0 / 3.0) < 1e-12);
}

TEST_CASE("oracle matrix is hermitian and matches the closed form") {
  const auto m = LieModel::su2();
  for (const auto& k : {InvariantPotential::square(m), InvariantPotential::log_eta(m),
                        InvariantPotential::combined(m, 2.0 * kPi, 1.0)}) {
    for (double x : {-3.7, -0.4, 0.8, 2.5, 4.9}) {
      const CMat mat = theta_matrix_oracle(m, k, t1(x));
      CHECK((mat - mat.adjoint()).cwiseAbs().maxCoeff() < 1e-8);
      const Vec ev = Eigen::SelfAdjointEigenSolver<CMat>(0.5 * (mat + mat.adjoint())).eigenvalues();
      const std::vector<double> oracle(ev.data(), ev.data() + ev.size());
      INFO(k.name << " at " << x);
      CHECK(spectrum_distance(theta_spectrum(m, k, t1(x)).all(), oracle) < 1e-4);
    }
  }
}

TEST_CASE("spectrum distance") {
  CHECK(spectrum_distance({1.0, 2.0}, {2.0, 1.0}) == 0.0);
  CHECK(std::isinf(spectrum_distance({1.0}, {1.0, 2.0})));
  CHECK(std::abs(spectrum_distance({1.0, 2.0}, {1.0, 2.2}) - 0.2 / 2.2) < 1e-15);
}

TEST_CASE("verdicts") {
  const auto m = LieModel::su2();
  const auto cfg = quick();
  const auto sq = psh_verdict(m, InvariantPotential::square(m), cfg);
  CHECK(sq.pass);
  CHECK(sq.metadata["verdict"] == "PSH");
  const auto neg = psh_verdict(m, InvariantPotential::square(m, -1.0), cfg);
  CHECK(neg.pass);
  CHECK(neg.metadata["verdict"] == "NOT_PSH");
  CHECK(std::abs(neg.metadata["min_hessian_eigenvalue"].get<double>() + 2.0) < 1e-14);
  const auto co = psh_verdict(m, InvariantPotential::cosine(m), cfg);
  CHECK(co.pass);
  CHECK(co.metadata["verdict"] == "NOT_PSH");
  CHECK(co.metadata["min_hessian_eigenvalue"].get<double>() < 0.0);
  const auto le = psh_verdict(m, InvariantPotential::log_eta(m), cfg);
  CHECK(le.pass);
  CHECK(le.metadata["verdict"] == "PSH");
  CHECK(le.metadata["min_sign_ratio"].get<double>() >= -1e-10);
}

TEST_CASE("tabulated potential") {
  const auto m = LieModel::su2();
  const auto path = std::filesystem::temp_directory_path() / "quantlab_table_test.txt";
  {
    std::ofstream out(path);
    out << "# t value\n";
    for (int i = 0; i <= 400; ++i) {
      const double x = -6.0 + 0.03 * i;
      out << x << " " << x * x << "\n";
    }
  }
  const auto k = InvariantPotential::by_name(m, "table:" + path.string());
  CHECK(std::abs(k.value(t1(1.3)) - 1.69) < 1e-6);
  CHECK(std::abs(k.gradient(t1(1.3))(0) - 2.6) < 1e-4);
  CHECK(psh_verdict(m, k, quick()).pass);
  CHECK_THROWS_AS(k.value(t1(7.0)), UsageError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(InvariantPotential::by_name(m, "nope"), UsageError);
  CHECK_THROWS_AS(InvariantPotential::by_name(m, "table:/nonexistent/file"), UsageError);
  CHECK_THROWS_AS(InvariantPotential::tabulated(LieModel::t2(), 0.0, 1.0, {1, 2, 3, 4}), UsageError);
}

TEST_CASE("certificates") {
  const auto cfg = quick();
  for (const auto& m : {LieModel::u1(), LieModel::t2(), LieModel::su2()}) {
    std::vector<CheckReport> rs = {canonical_semi_negativity_certificate(m, cfg), oracle_equivalence_certificate(m, cfg),
                                   limit_consistency_certificate(m, cfg), mu_equivariance_certificate(m, cfg)};
    for (const auto& [a, b] : cfg.twist_presets) rs.push_back(twist_positivity_certificate(m, a, b, cfg));
    for (const auto& r : rs) {
      INFO(m.name() << " " << r.check_id << " err=" << r.max_error);
      CHECK(r.pass);
    }
  }
  // twisting with a = 0 is outside the positive cone
  CHECK_THROWS_AS(twist_positivity_certificate(LieModel::su2(), 0.0, 1.0, cfg), UsageError);
  // too weak a twist fails the strict margin
  const auto weak = twist_positivity_certificate(LieModel::su2(), 1e-6, 1.0, cfg);
  CHECK_FALSE(weak.pass);
}
