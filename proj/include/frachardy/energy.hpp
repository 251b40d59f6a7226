#ifndef FRACHARDY_ENERGY_HPP
#define FRACHARDY_ENERGY_HPP

#include "frachardy/domain.hpp"
#include "frachardy/grid_function.hpp"
#include "frachardy/sphere.hpp"
#include "frachardy/trial_family.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace frachardy {

struct EnergyOptions {
    int band_radius = 2; // pairs closer than band_radius * h are replaced analytically
    int workers = 0;     // 0 = all available threads
    bool reference = false; // plain serial loops instead of the blocked kernel
    bool estimate_error = false; // also evaluate on the twice-coarser sublattice
};

struct EnergyResult {
    double value = 0.0;
    double h = 0.0;
    double error_estimate = 0.0;
    std::string method;
};

// Discrete Gagliardo p-energy of 1-D samples on a uniform lattice: midpoint
// pair sum outside the diagonal band plus the band's analytic replacement
// built from a central-difference derivative. `in_domain` (optional) masks
// nodes outside the underlying open set; masked nodes contribute no pairs.
double oneD_energy(const std::vector<double>& f, double h, double p, double alpha,
                   const EnergyOptions& opts = {},
                   const std::vector<std::uint8_t>* in_domain = nullptr);

// Exact complement kernel integral int_{R \ (a,b)} |x-y|^{-1-alpha} dy.
double complement_tail(double x, double a, double b, double alpha);

// Kernel integral over one interval (c, d) lying entirely on one side of x;
// d (or c) may be infinite.
double segment_tail(double x, double c, double d, double alpha);

// Full-line quadratic energy of the extension of f by zero: interval energy
// plus the exact complement tail term.
double fullline_energy(const GridFunction& f, double alpha, const EnergyOptions& opts = {});

// Double-sum p-energy over Omega x Omega on f's lattice extended across the
// domain, diagonal band replaced by its direction-averaged analytic moment.
EnergyResult gagliardo_direct(const GridFunction& f, const Domain& dom, double p, double alpha,
                              const EnergyOptions& opts = {});

// One-dimensional reduction: directions from the sphere quadrature, lattice of
// parallel lines per direction, 1-D energies along the in-domain samples.
EnergyResult gagliardo_reduced(const GridFunction& f, const Domain& dom, double p, double alpha,
                               const SphereQuadrature& quad, double h_line,
                               const EnergyOptions& opts = {});

// Frank-Seiringer ground-state potential on (0,1),
//   V(x) = 2/omega(x)^{p-1} PV int_0^1 (omega(x)-omega(y))|omega(x)-omega(y)|^{p-2}
//                                   |x-y|^{-1-alpha} dy,
// realized by symmetric pairing plus a series term for the innermost band.
// Refines until 1e-6 relative stability.
double fs_potential(double x, double p, double alpha, int resolution = 512);

// Truncated half-line version of the same principal value together with the
// value it must approach and a rigorous truncation bound.
struct HalflineIdentity {
    double value = 0.0;
    double expected = 0.0;
    double tail_bound = 0.0;
};
HalflineIdentity fs_halfline_identity(double x, double p, double alpha, double Y,
                                      int resolution = 2048);

// Half-line quadratic energy and x^{-alpha} weight mass of a log-lattice
// trial, computed on the log-uniform mesh (kernel in log coordinates is
// (2 sinh(|s|/2))^{-1-alpha} with the power weight split symmetrically).
struct HalflineEnergy {
    double energy = 0.0;
    double weight = 0.0;
};
HalflineEnergy halfline_log_energy(const HalflineTrial& trial, double alpha,
                                   const EnergyOptions& opts = {});

// Direction-averaged diagonal-band moment used by gagliardo_direct: the exact
// kernel mass of the omitted cell staircase, spherically averaged. Exposed for
// tests (equals the 1-D staircase constant at n = 1).
double band_moment(int n, double p, double alpha, int band_radius);

} // namespace frachardy

#endif
