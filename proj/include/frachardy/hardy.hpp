#ifndef FRACHARDY_HARDY_HPP
#define FRACHARDY_HARDY_HPP

#include "frachardy/constants.hpp"
#include "frachardy/domain.hpp"
#include "frachardy/energy.hpp"
#include "frachardy/grid_function.hpp"
#include "frachardy/trial_family.hpp"

#include <optional>
#include <string>
#include <vector>

namespace frachardy {

// Weight families, one per inequality verified. Each kind carries its
// theorem's leading-factor convention: the quadratic two-sided results and
// the interval min-distance bound compare (1/2) E against the weighted norm,
// the p-version with the one-sided average compares E itself.
enum class WeightKind {
    MAlpha,         // direction-averaged two-sided weight, any domain
    ConvexTwoSided, // [1/d + 1/(D-d)]^alpha on convex domains
    Dist,           // d^{-alpha}: convex domains, or open subsets of the line
    MSmall,         // one-sided direction average, any domain
    OneDTwoSided,   // (1/(x-a) + 1/(b-x))^alpha on an interval
    OneDUnion,      // (1/d_J + 1/delta_J)^alpha on a union of intervals
    MinDist,        // min(x-a, b-x)^{-alpha} on an interval
    HalfLine,       // x^{-alpha} on the half-line
};

std::string weight_kind_name(WeightKind k);
WeightKind weight_kind_from_name(const std::string& name);

// Leading factor applied to the energy (1/2 or 1).
double kind_factor(WeightKind k);

// The sharp constant the quotient is compared against.
double kind_constant(WeightKind k, int n, double alpha, double p);

// Throws ParamError unless (domain, alpha, p) lies in the kind's window.
void check_kind(WeightKind k, const Domain& dom, double alpha, double p);

// Weight values at the given points.
std::vector<double> weight_field(const Domain& dom, double alpha, double p, WeightKind kind,
                                 const SphereQuadrature* quad, const std::vector<Vec>& points);

// Rayleigh-type quotient: kind factor times the p-energy over the weighted
// p-norm of f.
double quotient(const GridFunction& f, const Domain& dom, double alpha, double p,
                WeightKind kind, const SphereQuadrature* quad = nullptr,
                const EnergyOptions& opts = {});

struct VerificationReport {
    std::string kind;
    std::string trial_id;
    int n = 1;
    double alpha = 0.0;
    double p = 2.0;
    double quotient = 0.0;
    double constant = 0.0;
    double margin = 0.0; // (quotient - constant) / constant
    double tol = 0.0;
    bool pass = false;
    double h = 0.0;
    int sphere_resolution = 0;
    double energy_error_estimate = 0.0;
};

struct VerifyOptions {
    double tol = 0.02;
    double constant_scale = 1.0; // negative-control knob
    EnergyOptions energy;
    const SphereQuadrature* quad = nullptr;
    bool estimate_errors = false;
};

// One report per trial function; the cell passes when every margin >= -tol.
std::vector<VerificationReport> verify(const Domain& dom, double alpha, double p,
                                       WeightKind kind,
                                       const std::vector<GridFunction>& family,
                                       const VerifyOptions& opts = {});

// Quotients of the half-line sharpness family against the x^{-alpha} weight.
struct SharpnessResult {
    std::vector<double> quotients;
    double kappa_value = 0.0;
    double final_gap = 0.0; // (last quotient - kappa) / kappa
};
SharpnessResult sharpness_probe(double alpha, int k_max, double eta = 0.02,
                                const EnergyOptions& opts = {});

// Scalar remainder from the interval proof: 1 - x^alpha - (1-x)^alpha.
double remainder(double x, double alpha);

// Pointwise check V(x) >= fs_constant(1,p,alpha) / x^alpha over the grid.
VerificationReport fs_inequality_check(double p, double alpha, const std::vector<double>& xs,
                                       double tol = 1e-4, int resolution = 512);

} // namespace frachardy

#endif
