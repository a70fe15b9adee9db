#include <cmath>

#include "doctest.h"
#include "quantlab/stratum_density.hpp"

using namespace quantlab;
using namespace quantlab::stratum;

TEST_CASE("zero field") {
  const auto f = GridField::sample(64, [](double, double) { return cd(0.0); });
  CHECK(h1_norm(f) == 0.0);
  CHECK(dolbeault_graph_norm(f) == 0.0);
}

TEST_CASE("support touching the boundary is rejected") {
  const auto f = GridField::sample(64, [](double x, double y) { return cd(bump(x, y, 0.5, 0.8, 0.0)); });
  CHECK_THROWS_AS(norm_parts(f), UsageError);
}

TEST_CASE("Gaussian H1 norm converges at second order") {
  auto g = [](double x, double y) { return cd(std::exp(-30.0 * (x * x + y * y))); };
  // exp(-a r^2), a = 30: |g|^2 = pi / (2a), |grad g|^2 = pi
  const double exact = std::sqrt(kPi / 60.0 + kPi);
  const double e1 = std::abs(h1_norm(GridField::sample(128, g)) - exact);
  const double e2 = std::abs(h1_norm(GridField::sample(256, g)) - exact);
  const double e3 = std::abs(h1_norm(GridField::sample(512, g)) - exact);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
  CHECK(e2 / e3 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("graph norm identity by summation by parts") {
  const auto f = GridField::sample(200, [](double x, double y) {
    return bump(x, y, 0.7) * std::exp(cd(0.0, 2.0 * x * y + y));
  });
  const auto p = norm_parts(f);
  CHECK(std::abs(p.graph() * p.graph() - p.l2_sq - 0.5 * (p.dx_sq + p.dy_sq)) < 1e-12 * p.l2_sq);
  CHECK(p.graph() >= kEquivalenceLower * p.h1());
  CHECK(p.graph() <= kEquivalenceUpper * p.h1());
  // streamed sweep matches the stored grid bit for bit
  const auto q = streamed_norm_parts(200, [](double x, double y) {
    return bump(x, y, 0.7) * std::exp(cd(0.0, 2.0 * x * y + y));
  });
  CHECK(q.l2_sq == p.l2_sq);
  CHECK(q.dbar_sq == p.dbar_sq);
}

TEST_CASE("cutoff profile") {
  const double m = std::exp(2.0);
  CHECK(cutoff_profile(m, 0.0) == 0.0);
  CHECK(cutoff_profile(m, 0.5 / (m * m)) == 0.0);
  CHECK(cutoff_profile(m, 1.0 / m) == doctest::Approx(1.0));
  CHECK(cutoff_profile(m, 0.5) == 1.0);
  CHECK(cutoff_profile(m, std::pow(m, -1.5)) == doctest::Approx(0.5));
}

TEST_CASE("support away from the removed point") {
  for (double lm : {2.0, 3.0}) {
    const double m = std::exp(lm);
    const double e = streamed_norm_parts(512, [&](double x, double y) {
                       return cd((1.0 - cutoff_profile(m, std::hypot(x, y))) * bump(x, y, 0.2, 0.5, 0.0));
                     }).graph();
    CHECK(e == 0.0);
  }
}

TEST_CASE("capacity estimate on a coarse grid") {
  // |grad psi_m|^2 integrates to 2 pi / log m, so E^2 ~ pi / log m near f(0) = 1
  StratumConfig cfg;
  cfg.grid = 1024;
  cfg.refined_grid = 2048;
  const auto d = removal_density_demo(cfg);
  for (std::size_t i = 0; i + 1 < d.m.size(); ++i) CHECK(d.error[i + 1] < d.error[i]);
  CHECK(d.rate > 0.5);
  CHECK(d.rate < 2.0);
  const double e2 = d.error[1] * d.error[1];
  CHECK(e2 == doctest::Approx(kPi / 2.0).epsilon(0.2));
  CHECK(d.csv().rfind("m,E\n", 0) == 0);
  for (const auto& r : density_certificates(d)) {
    INFO(r.check_id << " err=" << r.max_error << " " << r.metadata.dump());
    CHECK(r.pass);
  }
  CHECK(norm_equivalence_certificate(256).pass);
}
