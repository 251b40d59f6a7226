#ifndef FRACHARDY_TEST_ORACLES_HPP
#define FRACHARDY_TEST_ORACLES_HPP

// Test-only reference integrators, independent of the library's quadrature
// path (different node family on purpose).

#include <cmath>
#include <functional>

namespace oracles {

// Tanh-sinh (double exponential) quadrature on (a, b); handles integrable
// endpoint singularities. Level-doubling until the estimate stabilizes.
inline double tanh_sinh(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-12, int max_level = 14) {
    const double c = 0.5 * (b - a);
    const double m = 0.5 * (b + a);
    auto term = [&](double t) {
        const double s = std::sinh(t);
        const double u = std::tanh(0.5 * M_PI * s);
        const double x = m + c * u;
        if (!(x > a && x < b)) return 0.0;
        const double ch = std::cosh(0.5 * M_PI * s);
        const double w = 0.5 * M_PI * std::cosh(t) / (ch * ch);
        return f(x) * w;
    };
    double h = 1.0;
    double total = term(0.0);
    for (double t = h; t < 6.5; t += h) total += term(t) + term(-t);
    double prev = total * c * h;
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        for (double t = h; t < 6.5; t += 2.0 * h) total += term(t) + term(-t);
        const double est = total * c * h;
        if (level > 3 && std::abs(est - prev) <= rel_tol * std::abs(est)) return est;
        prev = est;
    }
    return prev;
}

} // namespace oracles

#endif
