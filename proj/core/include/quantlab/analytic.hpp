#pragma once

#include <functional>

#include "quantlab/types.hpp"

namespace quantlab::analytic {

// Entire functions with removable singularities at 0. Below |z| = kTaylorCut
// they switch to a truncated Taylor series (six terms).
inline constexpr double kTaylorCut = 1e-6;

cd sinc(cd z);                 // sin z / z
cd one_minus_cos_over(cd z);   // (1 - cos z) / z
cd inv_sinc(cd z);             // z / sin z
cd half_tan(cd z);             // (1 - cos z) / sin z = tan(z/2)
cd tan_half_over(cd z);        // 2 (1 - cos z) / (z sin z) = tan(z/2) / (z/2)

double sinhc(double x);        // sinh x / x
double log_sinhc(double x);    // log(sinh x / x), overflow-free
double coth_minus_inv(double x);  // coth x - 1/x, the derivative of log_sinhc
double log_sinhc_dd(double x);    // 1/x^2 - 1/sinh^2 x, second derivative of log_sinhc
double x_coth_plus_x(double x);   // x coth x + x (value 1 at x = 0)

/// f(A) for a real antisymmetric matrix A through the spectral decomposition of
/// the hermitian matrix iA. The result is real because f(conj z) = conj f(z)
/// for every function used here.
Mat antisymmetric_function(const Mat& a, const std::function<cd(cd)>& f);

}  // namespace quantlab::analytic
