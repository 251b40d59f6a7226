#ifndef FRACHARDY_QUADRATURE_HPP
#define FRACHARDY_QUADRATURE_HPP

#include <functional>

namespace frachardy {

// Adaptive Gauss-Kronrod (G7/K15) on [a, b]. Splits the worst interval until
// the summed K15-G7 error estimate drops below abs_tol, throws
// NonConvergenceError past max_intervals.
double adaptive_gk(const std::function<double(double)>& f, double a, double b,
                   double abs_tol, int max_intervals = 4000);

// Single K15 panel; returns the Kronrod value, *err gets |K15 - G7|.
double gk15(const std::function<double(double)>& f, double a, double b, double* err);

} // namespace frachardy

#endif
