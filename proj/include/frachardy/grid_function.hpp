#ifndef FRACHARDY_GRID_FUNCTION_HPP
#define FRACHARDY_GRID_FUNCTION_HPP

#include "frachardy/domain.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace frachardy {

// Compactly supported trial function sampled on a regular lattice of spacing
// h. Nodes are origin + h * (i, j, k), x varying fastest in storage.
struct GridFunction {
    int n = 1;
    Vec origin{};
    double h = 0.0;
    std::array<int, 3> dims{1, 1, 1};
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    std::size_t index(int i, int j, int k) const {
        return static_cast<std::size_t>(i) +
               static_cast<std::size_t>(dims[0]) * (j + static_cast<std::size_t>(dims[1]) * k);
    }
    Vec node(int i, int j, int k) const {
        return {origin[0] + h * i, origin[1] + h * j, origin[2] + h * k};
    }
    Vec far_corner() const {
        return {origin[0] + h * (dims[0] - 1), origin[1] + h * (dims[1] - 1),
                origin[2] + h * (dims[2] - 1)};
    }

    bool in_support(std::size_t idx) const { return values[idx] != 0.0; }

    // Cubic (Catmull-Rom) interpolation; zero outside the lattice.
    double interpolate(const Vec& x) const;

    // Discrete L^p norm (sum |f|^p h^n)^{1/p}.
    double lp_norm(double p) const;

    // Checks the compact-support invariant: every node with a nonzero value
    // keeps its closed h-ball inside the domain, and the support spans at
    // least 8 nodes per axis. Throws ParamError on violation.
    void validate_support(const Domain& dom) const;
};

struct BumpSpec {
    Vec center{};
    double radius = 0.0;
    double amplitude = 1.0;
};

// f(x) = amplitude * exp(-1 / (1 - |x - c|^2 / r^2)) inside the ball, zero
// outside. Throws when the ball (plus one cell of clearance) leaks out of the
// domain.
GridFunction sample_bump(const BumpSpec& spec, const Domain& dom, double h);

// g(x) = |x|^{alpha-1} f(1/x) on a lattice covering the inverted bounding
// interval; 1-D only, support must stay away from zero.
GridFunction inversion_1d(const GridFunction& f, double alpha);

// 1-D samples of f along x0 + s w (x0 . w = 0), cubic interpolation, clamped
// to zero outside the support lattice.
struct LineSamples {
    double s0 = 0.0;
    double h = 0.0;
    std::vector<double> values;
};
LineSamples restrict_to_line(const GridFunction& f, const Vec& x0, const Vec& w, double h_line);

// CSV (node coordinates + value) and compact binary I/O; formats documented
// in docs/file_formats.md.
void write_csv(const GridFunction& f, std::ostream& out);
GridFunction read_csv(std::istream& in);
void write_binary(const GridFunction& f, const std::string& path);
GridFunction read_binary(const std::string& path);

} // namespace frachardy

#endif
