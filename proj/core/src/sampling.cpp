#include "quantlab/sampling.hpp"

#include <cmath>

namespace quantlab::sampling {

Vec gaussian_vector(Rng& rng, int n) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = nd(rng);
  return v;
}

Vec unit_vector(Rng& rng, int n) {
  Vec v = gaussian_vector(rng, n);
  while (v.norm() < 1e-12) v = gaussian_vector(rng, n);
  return v / v.norm();
}

Vec in_ball(Rng& rng, int n, double radius) {
  const double u = uniform(rng, 0.0, 1.0);
  return radius * std::pow(u, 1.0 / n) * unit_vector(rng, n);
}

double uniform(Rng& rng, double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng);
}

GroupPoint group_point(const LieModel& m, Rng& rng) {
  return m.exp_alg(in_ball(rng, m.dim(), 2.0 * kPi));
}

GroupPoint complex_point(const LieModel& m, Rng& rng, double radius) {
  const AlgebraVec x = in_ball(rng, m.dim(), 2.0 * kPi);
  return m.exp_alg(x, in_ball(rng, m.dim(), radius));
}

}  // namespace quantlab::sampling
