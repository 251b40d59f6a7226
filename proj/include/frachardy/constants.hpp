#ifndef FRACHARDY_CONSTANTS_HPP
#define FRACHARDY_CONSTANTS_HPP

#include "frachardy/errors.hpp"

namespace frachardy {

// Parameter triple shared by most operations. Each operation checks its own
// (alpha, p) window; the struct only enforces n >= 1.
struct FracParams {
    int n = 1;
    double alpha = 1.5;
    double p = 2.0;
};

// Gamma function on (0, 50], Lanczos approximation, relative error <= 1e-12.
double gamma_fn(double x);

// Integral of |w_n|^alpha over the unit sphere S^{n-1}:
//   2 pi^{(n-1)/2} Gamma((1+alpha)/2) / Gamma((n+alpha)/2).
// Public window alpha in (0, 2].
double sphere_alpha_integral(int n, double alpha);

// Same closed form without the alpha window; used internally where the
// exponent is p (possibly > 2).
double axis_moment(int n, double beta);

// Surface measure of S^{n-1}.
double sphere_surface(int n);

// Sharp half-space constant for the quadratic (p = 2) inequality,
// zero exactly at alpha = 1. Window alpha in (0, 2).
double kappa(int n, double alpha);

// Sharp constant for the p-version: sphere integral times
// int_0^1 |1 - r^{(alpha-1)/p}|^p (1-r)^{-1-alpha} dr.
// Window 1 < p < inf, 1 < alpha < p. Absolute quadrature error <= 1e-10.
double fs_constant(int n, double p, double alpha);

} // namespace frachardy

#endif
