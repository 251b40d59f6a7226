#include "frachardy/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace frachardy {

namespace {

// Catmull-Rom weights for the four nodes at offsets -1, 0, 1, 2.
inline void cr_weights(double t, double w[4]) {
    const double t2 = t * t, t3 = t2 * t;
    w[0] = -0.5 * t3 + t2 - 0.5 * t;
    w[1] = 1.5 * t3 - 2.5 * t2 + 1.0;
    w[2] = -1.5 * t3 + 2.0 * t2 + 0.5 * t;
    w[3] = 0.5 * t3 - 0.5 * t2;
}

double bump_value(const BumpSpec& spec, const Vec& x, int n) {
    double r2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double d = x[i] - spec.center[i];
        r2 += d * d;
    }
    const double t2 = r2 / (spec.radius * spec.radius);
    if (t2 >= 1.0) return 0.0;
    return spec.amplitude * std::exp(-1.0 / (1.0 - t2));
}

} // namespace

double GridFunction::interpolate(const Vec& x) const {
    double acc[3][4]; // per-axis weights
    int base[3];
    for (int a = 0; a < n; ++a) {
        const double u = (x[a] - origin[a]) / h;
        const double fl = std::floor(u);
        base[a] = static_cast<int>(fl) - 1;
        cr_weights(u - fl, acc[a]);
    }
    for (int a = n; a < 3; ++a) {
        base[a] = 0;
        acc[a][0] = 1.0;
        acc[a][1] = acc[a][2] = acc[a][3] = 0.0;
    }
    const int span = 4;
    double out = 0.0;
    for (int dk = 0; dk < (n >= 3 ? span : 1); ++dk) {
        const int k = base[2] + dk;
        if (n >= 3 && (k < 0 || k >= dims[2])) continue;
        const double wk = n >= 3 ? acc[2][dk] : 1.0;
        for (int dj = 0; dj < (n >= 2 ? span : 1); ++dj) {
            const int j = base[1] + dj;
            if (n >= 2 && (j < 0 || j >= dims[1])) continue;
            const double wj = n >= 2 ? acc[1][dj] : 1.0;
            for (int di = 0; di < span; ++di) {
                const int i = base[0] + di;
                if (i < 0 || i >= dims[0]) continue;
                out += wk * wj * acc[0][di] * values[index(i, std::max(j, 0), std::max(k, 0))];
            }
        }
    }
    return out;
}

double GridFunction::lp_norm(double p) const {
    double s = 0.0;
    for (double v : values) s += std::pow(std::abs(v), p);
    return std::pow(s * std::pow(h, n), 1.0 / p);
}

void GridFunction::validate_support(const Domain& dom) const {
    int lo[3] = {dims[0], dims[1], dims[2]};
    int hi[3] = {-1, -1, -1};
    for (int k = 0; k < dims[2]; ++k)
        for (int j = 0; j < dims[1]; ++j)
            for (int i = 0; i < dims[0]; ++i) {
                if (values[index(i, j, k)] == 0.0) continue;
                const int idx3[3] = {i, j, k};
                for (int a = 0; a < 3; ++a) {
                    lo[a] = std::min(lo[a], idx3[a]);
                    hi[a] = std::max(hi[a], idx3[a]);
                }
                const Vec x = node(i, j, k);
                if (!dom.contains(x) || dist_to_boundary(dom, x) <= h)
                    throw ParamError(
                        "grid function: support node too close to the domain boundary");
            }
    if (hi[0] < 0) return; // identically zero is fine
    for (int a = 0; a < n; ++a)
        if (hi[a] - lo[a] + 1 < 8)
            throw ParamError("grid function: support must span at least 8 nodes per axis");
}

GridFunction sample_bump(const BumpSpec& spec, const Domain& dom, double h) {
    const int n = dom.n;
    if (!(spec.radius > 0.0)) throw ParamError("sample_bump: radius must be positive");
    if (!(h > 0.0) || h > spec.radius / 4.0)
        throw ParamError("sample_bump: need h <= radius/4 for an 8-node support span");
    if (!dom.contains(spec.center))
        throw ParamError("sample_bump: bump center outside the domain");
    if (dist_to_boundary(dom, spec.center) <= spec.radius + 2.0 * h)
        throw ParamError("sample_bump: bump ball leaks outside the domain");

    GridFunction f;
    f.n = n;
    f.h = h;
    const int m = static_cast<int>(std::ceil((spec.radius + 2.0 * h) / h));
    for (int a = 0; a < n; ++a) f.origin[a] = spec.center[a] - m * h;
    for (int a = n; a < 3; ++a) f.origin[a] = 0.0;
    for (int a = 0; a < n; ++a) f.dims[a] = 2 * m + 1;
    f.values.assign(static_cast<std::size_t>(f.dims[0]) * f.dims[1] * f.dims[2], 0.0);
    for (int k = 0; k < f.dims[2]; ++k)
        for (int j = 0; j < f.dims[1]; ++j)
            for (int i = 0; i < f.dims[0]; ++i)
                f.values[f.index(i, j, k)] = bump_value(spec, f.node(i, j, k), n);
    return f;
}

GridFunction inversion_1d(const GridFunction& f, double alpha) {
    if (f.n != 1) throw ParamError("inversion_1d: needs a 1-D grid function");
    // support bounds
    int ilo = -1, ihi = -1;
    for (int i = 0; i < f.dims[0]; ++i)
        if (f.values[i] != 0.0) {
            if (ilo < 0) ilo = i;
            ihi = i;
        }
    if (ilo < 0) throw ParamError("inversion_1d: function is identically zero");
    const double a = f.origin[0] + f.h * (ilo - 1);
    const double b = f.origin[0] + f.h * (ihi + 1);
    if (!(a > 0.0)) throw ParamError("inversion_1d: support touches zero");

    GridFunction g;
    g.n = 1;
    const int count = f.dims[0];
    g.dims = {count, 1, 1};
    g.h = (1.0 / a - 1.0 / b) / (count - 1);
    g.origin = {1.0 / b, 0.0, 0.0};
    g.values.assign(count, 0.0);
    for (int i = 0; i < count; ++i) {
        const double x = g.origin[0] + g.h * i;
        if (x <= 0.0) continue;
        const double y = 1.0 / x;
        if (y <= a || y >= b) continue;
        g.values[i] = std::pow(std::abs(x), alpha - 1.0) * f.interpolate({y, 0.0, 0.0});
    }
    return g;
}

LineSamples restrict_to_line(const GridFunction& f, const Vec& x0, const Vec& w, double h_line) {
    // s-range: intersect the line with the lattice box, padded by one cell
    double smin = -kInf, smax = kInf;
    const Vec far = f.far_corner();
    for (int a = 0; a < f.n; ++a) {
        const double lo = f.origin[a] - f.h, hi = far[a] + f.h;
        if (std::abs(w[a]) < 1e-15) {
            if (x0[a] < lo || x0[a] > hi) {
                smin = 0.0;
                smax = -1.0;
            }
            continue;
        }
        const double t1 = (lo - x0[a]) / w[a];
        const double t2 = (hi - x0[a]) / w[a];
        smin = std::max(smin, std::min(t1, t2));
        smax = std::min(smax, std::max(t1, t2));
    }
    LineSamples out;
    out.h = h_line;
    if (!(smin < smax)) return out;
    const long i0 = static_cast<long>(std::floor(smin / h_line));
    const long i1 = static_cast<long>(std::ceil(smax / h_line));
    out.s0 = i0 * h_line;
    out.values.reserve(i1 - i0 + 1);
    for (long i = i0; i <= i1; ++i) {
        const double s = i * h_line;
        Vec x{};
        for (int a = 0; a < f.n; ++a) x[a] = x0[a] + s * w[a];
        out.values.push_back(f.interpolate(x));
    }
    return out;
}

// ----- I/O -------------------------------------------------------------------

void write_csv(const GridFunction& f, std::ostream& out) {
    out << "# schema=frachardy-gridfunction-csv-v1\n";
    out << "# n=" << f.n << " h=" << f.h << "\n";
    const char* headers[3] = {"x", "y", "z"};
    for (int a = 0; a < f.n; ++a) out << headers[a] << ",";
    out << "value\n";
    out.precision(17);
    for (int k = 0; k < f.dims[2]; ++k)
        for (int j = 0; j < f.dims[1]; ++j)
            for (int i = 0; i < f.dims[0]; ++i) {
                const Vec x = f.node(i, j, k);
                for (int a = 0; a < f.n; ++a) out << x[a] << ",";
                out << f.values[f.index(i, j, k)] << "\n";
            }
}

GridFunction read_csv(std::istream& in) {
    std::string line;
    int n = 0;
    double h = 0.0;
    std::vector<std::array<double, 4>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::size_t pn = line.find("n=");
            std::size_t ph = line.find("h=");
            if (pn != std::string::npos) n = std::atoi(line.c_str() + pn + 2);
            if (ph != std::string::npos) h = std::atof(line.c_str() + ph + 2);
            continue;
        }
        if (line[0] == 'x') continue; // header row
        std::array<double, 4> row{};
        std::stringstream ss(line);
        std::string cell;
        int c = 0;
        while (std::getline(ss, cell, ',') && c < 4) row[c++] = std::atof(cell.c_str());
        if (n == 0) n = c - 1;
        // move value to slot 3
        row[3] = row[c - 1];
        rows.push_back(row);
    }
    if (rows.empty() || n < 1 || !(h > 0.0))
        throw ParamError("gridfunction csv: missing header or data");
    GridFunction f;
    f.n = n;
    f.h = h;
    Vec lo{kInf, kInf, kInf};
    Vec hi{-kInf, -kInf, -kInf};
    for (const auto& r : rows)
        for (int a = 0; a < n; ++a) {
            lo[a] = std::min(lo[a], r[a]);
            hi[a] = std::max(hi[a], r[a]);
        }
    for (int a = 0; a < n; ++a) {
        f.origin[a] = lo[a];
        f.dims[a] = static_cast<int>(std::lround((hi[a] - lo[a]) / h)) + 1;
    }
    f.values.assign(static_cast<std::size_t>(f.dims[0]) * f.dims[1] * f.dims[2], 0.0);
    for (const auto& r : rows) {
        int idx3[3] = {0, 0, 0};
        for (int a = 0; a < n; ++a)
            idx3[a] = static_cast<int>(std::lround((r[a] - lo[a]) / h));
        f.values[f.index(idx3[0], idx3[1], idx3[2])] = r[3];
    }
    return f;
}

void write_binary(const GridFunction& f, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    const char magic[8] = {'F', 'H', 'G', 'F', '1', 0, 0, 0};
    out.write(magic, 8);
    const std::int32_t n = f.n;
    out.write(reinterpret_cast<const char*>(&n), 4);
    std::int32_t d[3] = {f.dims[0], f.dims[1], f.dims[2]};
    out.write(reinterpret_cast<const char*>(d), 12);
    out.write(reinterpret_cast<const char*>(&f.h), 8);
    out.write(reinterpret_cast<const char*>(f.origin.data()), 24);
    out.write(reinterpret_cast<const char*>(f.values.data()), f.values.size() * 8);
}

GridFunction read_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    char magic[8];
    in.read(magic, 8);
    if (std::memcmp(magic, "FHGF1", 5) != 0)
        throw ParamError("gridfunction binary: bad magic");
    GridFunction f;
    std::int32_t n = 0, d[3] = {1, 1, 1};
    in.read(reinterpret_cast<char*>(&n), 4);
    in.read(reinterpret_cast<char*>(d), 12);
    in.read(reinterpret_cast<char*>(&f.h), 8);
    in.read(reinterpret_cast<char*>(f.origin.data()), 24);
    f.n = n;
    f.dims = {d[0], d[1], d[2]};
    f.values.assign(static_cast<std::size_t>(d[0]) * d[1] * d[2], 0.0);
    in.read(reinterpret_cast<char*>(f.values.data()), f.values.size() * 8);
    if (!in) throw ParamError("gridfunction binary: truncated file");
    return f;
}

} // namespace frachardy
