#ifndef FRACHARDY_DOMAIN_HPP
#define FRACHARDY_DOMAIN_HPP

#include "frachardy/errors.hpp"
#include "frachardy/sphere.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace frachardy {

using Vec = std::array<double, 3>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline double dot(const Vec& a, const Vec& b, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}
inline double norm(const Vec& a, int n) { return std::sqrt(dot(a, a, n)); }

// ----- domain variants ------------------------------------------------------

struct Interval {
    double a, b;
};

struct IntervalUnion {
    std::vector<Interval> parts; // sorted, pairwise disjoint
};

struct Box {
    Vec lo, hi;
};

struct Ball {
    Vec center;
    double radius;
};

// Open half-space { y : <normal, y> > offset }, normal stored unit length.
struct HalfSpace {
    Vec normal;
    double offset;
};

// Open intersection of half-spaces; interior_point certifies nonempty interior.
struct Polytope {
    std::vector<HalfSpace> facets;
    Vec interior_point;
    bool bounded = true;
};

struct Domain; // fwd

struct ConvexUnion {
    std::vector<Domain> parts; // pairwise disjoint convex domains
};

struct Domain {
    int n = 1; // ambient dimension
    std::variant<Interval, IntervalUnion, Box, Ball, HalfSpace, Polytope, ConvexUnion> shape;

    bool contains(const Vec& x) const;
    bool is_convex() const;
    bool is_bounded() const;
    // axis-aligned bounding box of the domain; infinite extents for unbounded
    void bounding_box(Vec& lo, Vec& hi) const;
    std::string kind_name() const;
};

// Validating constructors (normalize normals, check invariants).
Domain make_interval(double a, double b);
Domain make_interval_union(std::vector<Interval> parts);
Domain make_box(int n, const Vec& lo, const Vec& hi);
Domain make_ball(int n, const Vec& center, double radius);
Domain make_halfspace(int n, const Vec& inward_normal, double offset);
Domain make_polytope(int n, std::vector<HalfSpace> facets, const Vec& interior_point, bool bounded);
Domain make_convex_union(std::vector<Domain> parts);

// ----- ray tracing ----------------------------------------------------------

// Open parameter intervals { t : x + t w in Omega }, sorted and disjoint.
struct RayTrace {
    struct Seg {
        double lo, hi;
    };
    std::vector<Seg> segments;

    // segment containing t = 0 (throws if none: x was outside)
    const Seg& at_origin() const;
};

RayTrace ray_intervals(const Domain& dom, const Vec& x, const Vec& w);

// Directional distances along the line through x with direction w:
//   d_w     = min { |t| : x + t w not in Omega }
//   delta_w = sup { |t| : x + t w in Omega }
struct DirDist {
    double d_w;
    double delta_w;
};
DirDist dir_dist(const Domain& dom, const Vec& x, const Vec& w);

// Euclidean distance to the boundary.
double dist_to_boundary(const Domain& dom, const Vec& x);

// Slab width of a convex domain with respect to x: the narrowest slab bounded
// by a supporting hyper-plane at a boundary point nearest to x. Infinity when
// that slab is a half-space.
double width(const Domain& dom, const Vec& x);

// Support function sup_{y in P} <dir, y> of a polytope, via enumeration of
// dual basic solutions. Returns +inf when unbounded in that direction.
double polytope_support(const Polytope& poly, int n, const Vec& dir);

// Direction-averaged boundary weight. two_sided = true gives
//   1/M_alpha(x)^alpha = sum_k w_k [1/d_{w_k} + 1/delta_{w_k}]^alpha / I_{n,alpha},
// two_sided = false the one-sided analogue with d_{w_k}^{-alpha}.
double m_weight(const Domain& dom, const Vec& x, double alpha, const SphereQuadrature& quad,
                bool two_sided);

// Convex two-sided bound [1/d(x) + 1/(D(x) - d(x))]^alpha; the second
// reciprocal reads as zero when the width is infinite.
double convex_weight(const Domain& dom, const Vec& x, double alpha);

} // namespace frachardy

#endif
