#ifndef FRACHARDY_SPHERE_HPP
#define FRACHARDY_SPHERE_HPP

#include <array>
#include <vector>

namespace frachardy {

// Quadrature on S^{n-1} with antipodally symmetric nodes; weights sum to the
// surface measure. n = 1 is the exact two-point rule, n = 2 a midpoint rule in
// angle, n = 3 Gauss-Legendre in |cos(theta)| (mirrored) times uniform azimuth.
struct SphereQuadrature {
    int n = 1;
    int resolution = 0;
    std::vector<std::array<double, 3>> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
    double total_weight() const;
    // true when every node's antipode is present with equal weight
    bool antipodally_symmetric(double tol = 1e-12) const;
};

SphereQuadrature build_sphere_quadrature(int n, int resolution);

// Honors the FRAC_HARDY_CACHE directory: loads the node set if cached there,
// builds and stores it otherwise.
SphereQuadrature cached_sphere_quadrature(int n, int resolution);

} // namespace frachardy

#endif
