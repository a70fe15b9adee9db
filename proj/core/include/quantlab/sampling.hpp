#pragma once

#include <random>

#include "quantlab/lie_core.hpp"

namespace quantlab::sampling {

using Rng = std::mt19937_64;

Vec gaussian_vector(Rng& rng, int n);
Vec unit_vector(Rng& rng, int n);
/// Uniform in the ball of the given radius.
Vec in_ball(Rng& rng, int n, double radius);
double uniform(Rng& rng, double a, double b);
GroupPoint group_point(const LieModel& m, Rng& rng);
/// Random point of G^C: x e^{iY} with |Y| <= radius.
GroupPoint complex_point(const LieModel& m, Rng& rng, double radius);

}  // namespace quantlab::sampling
