#include "frachardy/energy.hpp"
#include "frachardy/constants.hpp"
#include "frachardy/parallel.hpp"
#include "frachardy/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace frachardy {

namespace {

inline double powp(double x, double p) {
    x = std::abs(x);
    if (p == 2.0) return x * x;
    if (p == 3.0) return x * x * x;
    return std::pow(x, p);
}

// Exact kernel mass of the omitted 1-D cell staircase of radius k, relative
// to |f'(s_i)|^p h^{q+1} with q = p - alpha.
double staircase_constant(double q, int k) {
    return 2.0 / (q * (q + 1.0)) *
           (std::pow(k + 1.0, q + 1.0) - std::pow(static_cast<double>(k), q + 1.0));
}

double central_diff(const std::vector<double>& f, long i, double h) {
    const long n = static_cast<long>(f.size());
    const double fm = i > 0 ? f[i - 1] : 0.0;
    const double fp = i + 1 < n ? f[i + 1] : 0.0;
    return (fp - fm) / (2.0 * h);
}

} // namespace

// ----- 1-D energy -------------------------------------------------------------

double oneD_energy(const std::vector<double>& f, double h, double p, double alpha,
                   const EnergyOptions& opts, const std::vector<std::uint8_t>* in_domain) {
    if (!(p > 1.0)) throw ParamError("oneD_energy: p must be > 1");
    if (!(alpha < p)) throw ParamError("oneD_energy: needs alpha < p");
    if (!(h > 0.0)) throw ParamError("oneD_energy: h must be positive");
    const long n = static_cast<long>(f.size());
    if (n < 2) return 0.0;
    const int kband = opts.band_radius;
    const double q = p - alpha;

    auto masked = [&](long i) -> bool { return !in_domain || (*in_domain)[i]; };

    auto offset_sum = [&](long m) -> double {
        const double km = std::pow(m * h, -1.0 - alpha);
        double s = 0.0;
        for (long i = 0; i + m < n; ++i) {
            if (!masked(i) || !masked(i + m)) continue;
            const double d = f[i + m] - f[i];
            if (d == 0.0) continue;
            s += powp(d, p);
        }
        return 2.0 * s * km * h * h;
    };
    const long mcount = n - 1 - kband;
    double E = 0.0;
    if (mcount > 0) {
        if (opts.reference)
            E = serial_sum(mcount, [&](long j) { return offset_sum(j + kband + 1); });
        else
            E = blocked_sum(mcount, opts.workers,
                            [&](long j) { return offset_sum(j + kband + 1); });
    }

    const double C = staircase_constant(q, kband) * std::pow(h, q + 1.0);
    double band = 0.0;
    for (long i = 0; i < n; ++i) {
        if (!masked(i)) continue;
        const double df = central_diff(f, i, h);
        if (df != 0.0) band += powp(df, p);
    }
    return E + band * C;
}

// ----- tails -------------------------------------------------------------------

double complement_tail(double x, double a, double b, double alpha) {
    if (!(a < x && x < b)) throw OutsideDomainError("complement_tail: x must lie in (a, b)");
    if (!(alpha > 0.0) || !(alpha < 2.0))
        throw ParamError("complement_tail: alpha must lie in (0, 2)");
    return (std::pow(x - a, -alpha) + std::pow(b - x, -alpha)) / alpha;
}

double segment_tail(double x, double c, double d, double alpha) {
    if (c > d) std::swap(c, d);
    if (x <= c) {
        const double lo = std::pow(c - x, -alpha);
        const double hi = std::isinf(d) ? 0.0 : std::pow(d - x, -alpha);
        return (lo - hi) / alpha;
    }
    if (x >= d) {
        const double lo = std::pow(x - d, -alpha);
        const double hi = std::isinf(c) ? 0.0 : std::pow(x - c, -alpha);
        return (lo - hi) / alpha;
    }
    throw OutsideDomainError("segment_tail: x inside the segment");
}

double fullline_energy(const GridFunction& f, double alpha, const EnergyOptions& opts) {
    if (f.n != 1) throw ParamError("fullline_energy: needs a 1-D grid function");
    const double a = f.origin[0];
    const double b = f.far_corner()[0];
    double E = oneD_energy(f.values, f.h, 2.0, alpha, opts);
    double tail = 0.0;
    for (int i = 1; i + 1 < f.dims[0]; ++i) {
        const double v = f.values[i];
        if (v == 0.0) continue;
        tail += v * v * complement_tail(f.origin[0] + f.h * i, a, b, alpha);
    }
    return E + 2.0 * tail * f.h;
}

// ----- diagonal band moment ---------------------------------------------------

namespace {

// Kernel mass of the cell pair (0, o):
//   int_Q int_Q |o + eta - xi|^e  =  int rho(y - o) |y|^e dy,
// rho = product of (1 - |z_i|); exact in the radial variable, quadrature in
// angle.
double cell_pair_mass(int n, double e, const std::array<int, 3>& o,
                      const SphereQuadrature& ang) {
    double total = 0.0;
    for (std::size_t a = 0; a < ang.size(); ++a) {
        const auto& w = ang.nodes[a];
        double rin = 0.0, rout = kInf;
        bool empty = false;
        for (int i = 0; i < n; ++i) {
            const double lo = o[i] - 1.0, hi = o[i] + 1.0;
            if (std::abs(w[i]) < 1e-15) {
                if (lo > 0.0 || hi < 0.0) empty = true;
                continue;
            }
            const double t1 = lo / w[i], t2 = hi / w[i];
            rin = std::max(rin, std::min(t1, t2));
            rout = std::min(rout, std::max(t1, t2));
        }
        rin = std::max(rin, 0.0);
        if (empty || !(rin < rout)) continue;
        double brk[5];
        int nb = 0;
        brk[nb++] = rin;
        for (int i = 0; i < n; ++i) {
            if (std::abs(w[i]) < 1e-15) continue;
            const double r0 = o[i] / w[i];
            if (r0 > rin && r0 < rout) brk[nb++] = r0;
        }
        brk[nb++] = rout;
        std::sort(brk, brk + nb);
        double acc = 0.0;
        for (int s = 0; s + 1 < nb; ++s) {
            const double r0 = brk[s], r1 = brk[s + 1];
            if (!(r1 > r0)) continue;
            // on (r0, r1): 1 - |r w_i - o_i| = a_i + b_i r, signs fixed
            double coef[4] = {1.0, 0.0, 0.0, 0.0};
            const double rm = 0.5 * (r0 + r1);
            for (int i = 0; i < n; ++i) {
                const double sgn = (rm * w[i] - o[i]) >= 0.0 ? 1.0 : -1.0;
                const double ai = 1.0 + sgn * o[i];
                const double bi = -sgn * w[i];
                double next[4] = {0.0, 0.0, 0.0, 0.0};
                for (int m = 0; m < 3; ++m) {
                    next[m] += coef[m] * ai;
                    next[m + 1] += coef[m] * bi;
                }
                for (int m = 0; m < 4; ++m) coef[m] = next[m];
            }
            for (int m = 0; m <= n; ++m) {
                if (coef[m] == 0.0) continue;
                const double ex = e + n + m;
                acc += coef[m] * (std::pow(r1, ex) - std::pow(r0, ex)) / ex;
            }
        }
        total += ang.weights[a] * acc;
    }
    return total;
}

} // namespace

double band_moment(int n, double p, double alpha, int band_radius) {
    if (!(p > alpha)) throw ParamError("band_moment: needs p > alpha");
    const double e = p - n - alpha;
    const SphereQuadrature ang = build_sphere_quadrature(n, n == 3 ? 96 : 2048);
    double S = 0.0;
    const int k2 = band_radius * band_radius;
    for (int oz = (n >= 3 ? -band_radius : 0); oz <= (n >= 3 ? band_radius : 0); ++oz)
        for (int oy = (n >= 2 ? -band_radius : 0); oy <= (n >= 2 ? band_radius : 0); ++oy)
            for (int ox = -band_radius; ox <= band_radius; ++ox) {
                if (ox * ox + oy * oy + oz * oz > k2) continue;
                S += cell_pair_mass(n, e, {ox, oy, oz}, ang);
            }
    return axis_moment(n, p) / sphere_surface(n) * S;
}

// ----- direct n-D energy -------------------------------------------------------

namespace {

struct Lattice {
    int n = 1;
    double h = 0.0;
    std::array<long, 3> lo{0, 0, 0}; // index window relative to f.origin
    std::array<long, 3> count{1, 1, 1};
    std::vector<double> xs, ys, zs;
    std::vector<double> vals;
    std::vector<std::array<int, 3>> gcoord;
    std::vector<long> support;
    std::vector<long> grid_to_node; // dense map, -1 where no node

    long grid_index(long gi, long gj, long gk) const {
        return (gi - lo[0]) + count[0] * ((gj - lo[1]) + count[1] * (gk - lo[2]));
    }
    long node_at(long gi, long gj, long gk) const {
        for (int a = 0; a < 3; ++a) {
            const long g = a == 0 ? gi : (a == 1 ? gj : gk);
            if (g < lo[a] || g >= lo[a] + count[a]) return -1;
        }
        return grid_to_node[grid_index(gi, gj, gk)];
    }
    double value_at(long gi, long gj, long gk) const {
        const long id = node_at(gi, gj, gk);
        return id < 0 ? 0.0 : vals[id];
    }
};

Lattice build_lattice(const GridFunction& f, const Domain& dom, const Vec& cover_lo,
                      const Vec& cover_hi) {
    Lattice L;
    L.n = dom.n;
    L.h = f.h;
    for (int a = 0; a < dom.n; ++a) {
        L.lo[a] = static_cast<long>(std::floor((cover_lo[a] - f.origin[a]) / f.h - 1e-9));
        const long hi = static_cast<long>(std::ceil((cover_hi[a] - f.origin[a]) / f.h + 1e-9));
        L.count[a] = hi - L.lo[a] + 1;
        if (L.count[a] < 1) throw ParamError("energy lattice: empty cover");
    }
    const long total = L.count[0] * L.count[1] * L.count[2];
    if (total > 40'000'000)
        throw ParamError("energy lattice: resolution cap exceeded");
    L.grid_to_node.assign(total, -1);
    for (long gk = L.lo[2]; gk < L.lo[2] + L.count[2]; ++gk)
        for (long gj = L.lo[1]; gj < L.lo[1] + L.count[1]; ++gj)
            for (long gi = L.lo[0]; gi < L.lo[0] + L.count[0]; ++gi) {
                Vec x{f.origin[0] + f.h * gi, f.origin[1] + f.h * gj,
                      f.origin[2] + f.h * gk};
                // the grazing band keeps node inclusion scale covariant when
                // a node lands on the boundary up to rounding
                if (!dom.contains(x) || dist_to_boundary(dom, x) <= 1e-9 * f.h) continue;
                double v = 0.0;
                if (gi >= 0 && gi < f.dims[0] && gj >= 0 && gj < f.dims[1] && gk >= 0 &&
                    gk < f.dims[2])
                    v = f.values[f.index(static_cast<int>(gi), static_cast<int>(gj),
                                         static_cast<int>(gk))];
                const long id = static_cast<long>(L.xs.size());
                L.grid_to_node[L.grid_index(gi, gj, gk)] = id;
                L.xs.push_back(x[0]);
                L.ys.push_back(x[1]);
                L.zs.push_back(x[2]);
                L.vals.push_back(v);
                L.gcoord.push_back({static_cast<int>(gi), static_cast<int>(gj),
                                    static_cast<int>(gk)});
                if (v != 0.0) L.support.push_back(id);
            }
    return L;
}

double direct_pair_sum(const Lattice& L, double p, double alpha, const EnergyOptions& opts) {
    const int n = L.n;
    const double h = L.h;
    const double band2 = opts.band_radius * opts.band_radius * h * h * (1.0 + 1e-12);
    const double expo = -0.5 * (n + alpha);
    const long ns = static_cast<long>(L.support.size());
    const long ntot = static_cast<long>(L.xs.size());

    auto row = [&](long si) -> double {
        const long i = L.support[si];
        const double xi = L.xs[i], yi = L.ys[i], zi = L.zs[i], vi = L.vals[i];
        double s = 0.0;
        for (long j = 0; j < ntot; ++j) {
            const double dx = L.xs[j] - xi;
            const double dy = L.ys[j] - yi;
            const double dz = L.zs[j] - zi;
            const double r2 = dx * dx + dy * dy + dz * dz;
            if (r2 <= band2) continue;
            const double vj = L.vals[j];
            double c = powp(vi - vj, p) * std::pow(r2, expo);
            if (vj == 0.0) c *= 2.0; // mirrored ordered pair has no support row
            s += c;
        }
        return s;
    };
    double E;
    if (opts.reference)
        E = serial_sum(ns, row);
    else
        E = blocked_sum(ns, opts.workers, row);
    return E * std::pow(h, 2.0 * n);
}

// Band replacement: per node, |grad f|^p h^{n+p-alpha} * band_moment.
double direct_band_sum(const Lattice& L, double p, double alpha, const EnergyOptions& opts) {
    const double inv2h = 1.0 / (2.0 * L.h);
    const long ntot = static_cast<long>(L.xs.size());
    double acc = 0.0;
    for (long i = 0; i < ntot; ++i) {
        const auto& g = L.gcoord[i];
        double g2 = 0.0;
        for (int a = 0; a < L.n; ++a) {
            long gi = g[0], gj = g[1], gk = g[2];
            long& c = a == 0 ? gi : (a == 1 ? gj : gk);
            ++c;
            const double fp = L.value_at(gi, gj, gk);
            c -= 2;
            const double fm = L.value_at(gi, gj, gk);
            const double d = (fp - fm) * inv2h;
            g2 += d * d;
        }
        if (g2 == 0.0) continue;
        acc += powp(std::sqrt(g2), p);
    }
    return acc * std::pow(L.h, L.n + p - alpha) * band_moment(L.n, p, alpha, opts.band_radius);
}

// Absolute 1-D trace segments of a 1-D domain through a point inside it.
std::vector<RayTrace::Seg> line_segments_1d(const Domain& dom, double x0) {
    RayTrace tr = ray_intervals(dom, {x0, 0.0, 0.0}, {1.0, 0.0, 0.0});
    for (auto& s : tr.segments) {
        s.lo += x0;
        s.hi += x0;
    }
    return tr.segments;
}

double direct_value(const GridFunction& f, const Domain& dom, double p, double alpha,
                    const EnergyOptions& opts) {
    const int n = dom.n;
    // support bounds in f's index space
    bool any = false;
    int slo[3] = {0, 0, 0}, shi[3] = {0, 0, 0};
    for (int k = 0; k < f.dims[2]; ++k)
        for (int j = 0; j < f.dims[1]; ++j)
            for (int i = 0; i < f.dims[0]; ++i) {
                if (f.values[f.index(i, j, k)] == 0.0) continue;
                const int idx3[3] = {i, j, k};
                if (!any) {
                    for (int a = 0; a < 3; ++a) slo[a] = shi[a] = idx3[a];
                    any = true;
                } else {
                    for (int a = 0; a < 3; ++a) {
                        slo[a] = std::min(slo[a], idx3[a]);
                        shi[a] = std::max(shi[a], idx3[a]);
                    }
                }
            }
    if (!any) return 0.0;

    Vec cover_lo{}, cover_hi{};
    double tail_total = 0.0;
    Lattice L;
    if (n == 1) {
        const double w_supp = (shi[0] - slo[0] + 1) * f.h;
        const double pad = std::max(w_supp, 8 * f.h);
        const double x_first = f.origin[0] + f.h * slo[0];
        auto segs = line_segments_1d(dom, x_first);
        cover_lo[0] = f.origin[0] - pad;
        cover_hi[0] = f.far_corner()[0] + pad;
        if (!std::isinf(segs.front().lo))
            cover_lo[0] = std::max(std::min(cover_lo[0], segs.front().lo), segs.front().lo);
        if (!std::isinf(segs.back().hi))
            cover_hi[0] = std::min(std::max(cover_hi[0], segs.back().hi), segs.back().hi);
        L = build_lattice(f, dom, cover_lo, cover_hi);
        // analytic kernel tails over domain segments beyond the lattice window
        const double X0 = f.origin[0] + f.h * (L.lo[0]) - 0.5 * f.h;
        const double X1 = f.origin[0] + f.h * (L.lo[0] + L.count[0] - 1) + 0.5 * f.h;
        for (long si : L.support) {
            const double x = L.xs[si];
            double T = 0.0;
            for (const auto& seg : segs) {
                if (seg.lo < X0) T += segment_tail(x, seg.lo, std::min(seg.hi, X0), alpha);
                if (seg.hi > X1) T += segment_tail(x, std::max(seg.lo, X1), seg.hi, alpha);
            }
            tail_total += powp(L.vals[si], p) * T;
        }
        tail_total *= 2.0 * f.h;
    } else {
        if (!dom.is_bounded())
            throw ParamError("gagliardo_direct: unbounded domains supported only for n = 1");
        Vec blo, bhi;
        dom.bounding_box(blo, bhi);
        L = build_lattice(f, dom, blo, bhi);
    }

    // support must sit band_radius cells inside the domain
    const double inset = opts.band_radius * f.h;
    for (long si : L.support) {
        Vec x{L.xs[si], L.ys[si], L.zs[si]};
        if (dist_to_boundary(dom, x) <= inset)
            throw ParamError("gagliardo_direct: support closer than the band radius "
                             "to the boundary");
    }

    return direct_pair_sum(L, p, alpha, opts) + direct_band_sum(L, p, alpha, opts) +
           tail_total;
}

GridFunction coarsen2(const GridFunction& f) {
    GridFunction g;
    g.n = f.n;
    g.h = 2.0 * f.h;
    g.origin = f.origin;
    for (int a = 0; a < 3; ++a) g.dims[a] = a < f.n ? (f.dims[a] + 1) / 2 : 1;
    g.values.assign(static_cast<std::size_t>(g.dims[0]) * g.dims[1] * g.dims[2], 0.0);
    for (int k = 0; k < g.dims[2]; ++k)
        for (int j = 0; j < g.dims[1]; ++j)
            for (int i = 0; i < g.dims[0]; ++i)
                g.values[g.index(i, j, k)] = f.values[f.index(
                    std::min(2 * i, f.dims[0] - 1), std::min(f.n >= 2 ? 2 * j : 0, f.dims[1] - 1),
                    std::min(f.n >= 3 ? 2 * k : 0, f.dims[2] - 1))];
    return g;
}

} // namespace

EnergyResult gagliardo_direct(const GridFunction& f, const Domain& dom, double p, double alpha,
                              const EnergyOptions& opts) {
    if (!(p > 1.0) || !(alpha < p))
        throw ParamError("gagliardo_direct: needs p > 1 and alpha < p");
    if (f.n != dom.n) throw ParamError("gagliardo_direct: dimension mismatch");
    EnergyResult res;
    res.h = f.h;
    res.method = "direct";
    res.value = direct_value(f, dom, p, alpha, opts);
    if (opts.estimate_error && res.value != 0.0) {
        const double coarse = direct_value(coarsen2(f), dom, p, alpha, opts);
        res.error_estimate = std::abs(res.value - coarse);
    }
    return res;
}

// ----- reduced (1-D line) energy ------------------------------------------------

namespace {

void orthobasis(const Vec& w, int n, Vec& u, Vec& v) {
    if (n == 2) {
        u = {-w[1], w[0], 0.0};
        v = {0.0, 0.0, 0.0};
        return;
    }
    // pick the axis least aligned with w
    int amin = 0;
    for (int a = 1; a < 3; ++a)
        if (std::abs(w[a]) < std::abs(w[amin])) amin = a;
    Vec e{};
    e[amin] = 1.0;
    const double proj = dot(e, w, 3);
    for (int a = 0; a < 3; ++a) u[a] = e[a] - proj * w[a];
    const double lu = norm(u, 3);
    for (int a = 0; a < 3; ++a) u[a] /= lu;
    v = {w[1] * u[2] - w[2] * u[1], w[2] * u[0] - w[0] * u[2], w[0] * u[1] - w[1] * u[0]};
}

double reduced_value(const GridFunction& f, const Domain& dom, double p, double alpha,
                     const SphereQuadrature& quad, double h_line, const EnergyOptions& opts) {
    const int n = dom.n;
    Vec blo, bhi;
    dom.bounding_box(blo, bhi);

    // corners of the bounding box for projections
    std::vector<Vec> corners;
    for (int m = 0; m < (1 << n); ++m) {
        Vec c{};
        for (int a = 0; a < n; ++a) c[a] = (m >> a) & 1 ? bhi[a] : blo[a];
        corners.push_back(c);
    }

    EnergyOptions line_opts = opts;
    line_opts.workers = 1;      // parallelism lives at the direction level
    line_opts.reference = true; // short arrays; plain loops are cheapest

    auto direction_term = [&](long qi) -> double {
        Vec w{};
        for (int a = 0; a < n; ++a) w[a] = quad.nodes[qi][a];
        double proj_lo = kInf, proj_hi = -kInf, s_lo = kInf, s_hi = -kInf;
        Vec u{}, v{};
        double vproj_lo = kInf, vproj_hi = -kInf;
        if (n >= 2) orthobasis(w, n, u, v);
        for (const auto& c : corners) {
            const double swc = dot(c, w, n);
            s_lo = std::min(s_lo, swc);
            s_hi = std::max(s_hi, swc);
            if (n >= 2) {
                const double cu = dot(c, u, n);
                proj_lo = std::min(proj_lo, cu);
                proj_hi = std::max(proj_hi, cu);
            }
            if (n >= 3) {
                const double cv = dot(c, v, n);
                vproj_lo = std::min(vproj_lo, cv);
                vproj_hi = std::max(vproj_hi, cv);
            }
        }
        const long j0 = static_cast<long>(std::floor(s_lo / h_line)) - 1;
        const long j1 = static_cast<long>(std::ceil(s_hi / h_line)) + 1;
        const long nsamp = j1 - j0 + 1;

        long m0 = 0, m1 = 0, l0 = 0, l1 = 0;
        if (n >= 2) {
            m0 = static_cast<long>(std::floor(proj_lo / h_line)) - 1;
            m1 = static_cast<long>(std::ceil(proj_hi / h_line)) + 1;
        }
        if (n >= 3) {
            l0 = static_cast<long>(std::floor(vproj_lo / h_line)) - 1;
            l1 = static_cast<long>(std::ceil(vproj_hi / h_line)) + 1;
        }

        std::vector<double> line(nsamp);
        std::vector<std::uint8_t> mask(nsamp);
        double acc = 0.0;
        for (long m = m0; m <= m1; ++m) {
            for (long l = l0; l <= l1; ++l) {
                Vec base{};
                for (int a = 0; a < n; ++a)
                    base[a] = (n >= 2 ? (m + 0.5) * h_line * u[a] : 0.0) +
                              (n >= 3 ? (l + 0.5) * h_line * v[a] : 0.0);
                bool any_val = false;
                for (long j = j0; j <= j1; ++j) {
                    Vec x{};
                    for (int a = 0; a < n; ++a) x[a] = base[a] + j * h_line * w[a];
                    const bool in = dom.contains(x);
                    mask[j - j0] = in;
                    double val = 0.0;
                    if (in) {
                        val = f.interpolate(x);
                        if (val != 0.0) any_val = true;
                    }
                    line[j - j0] = val;
                }
                if (!any_val) continue;
                acc += oneD_energy(line, h_line, p, alpha, line_opts, &mask);
                if (n == 1) break;
            }
            if (n == 1) break;
        }
        return quad.weights[qi] * acc * std::pow(h_line, n - 1);
    };

    const long nq = static_cast<long>(quad.size());
    double total;
    if (opts.reference)
        total = serial_sum(nq, direction_term);
    else
        total = blocked_sum(nq, opts.workers, direction_term);
    return 0.5 * total;
}

} // namespace

EnergyResult gagliardo_reduced(const GridFunction& f, const Domain& dom, double p, double alpha,
                               const SphereQuadrature& quad, double h_line,
                               const EnergyOptions& opts) {
    if (!(p > 1.0) || !(alpha < p))
        throw ParamError("gagliardo_reduced: needs p > 1 and alpha < p");
    if (f.n != dom.n || quad.n != dom.n)
        throw ParamError("gagliardo_reduced: dimension mismatch");
    if (!dom.is_bounded())
        throw ParamError("gagliardo_reduced: needs a bounded domain");
    if (!quad.antipodally_symmetric())
        throw ParamError("gagliardo_reduced: sphere quadrature is not antipodally symmetric");
    EnergyResult res;
    res.h = h_line;
    res.method = "reduced";
    res.value = reduced_value(f, dom, p, alpha, quad, h_line, opts);
    if (opts.estimate_error && res.value != 0.0) {
        const double coarse = reduced_value(f, dom, p, alpha, quad, 2.0 * h_line, opts);
        res.error_estimate = std::abs(res.value - coarse);
    }
    return res;
}

// ----- Frank-Seiringer potential -------------------------------------------------

namespace {

struct OmegaSeries {
    double wx, wp, A, B, C;
};

OmegaSeries omega_series(double x, double s) {
    OmegaSeries o;
    o.wx = std::pow(x, s);
    o.wp = s * std::pow(x, s - 1.0);
    o.A = (s - 1.0) / x;
    o.B = (s - 1.0) * (s - 2.0) / (x * x);
    o.C = (s - 1.0) * (s - 2.0) * (s - 3.0) / (x * x * x);
    return o;
}

// int_0^eps of the paired integrand via its odd Taylor series.
double paired_series(const OmegaSeries& o, double p, double alpha, double eps) {
    const double q = p - 1.0;
    const double K3 = q * o.C / 12.0 + q * (q - 1.0) * o.A * o.B / 6.0 +
                      q * (q - 1.0) * (q - 2.0) * o.A * o.A * o.A / 24.0;
    return std::pow(o.wp, q) *
           (-q * o.A * std::pow(eps, p - alpha) / (p - alpha) -
            K3 * std::pow(eps, p + 2.0 - alpha) / (p + 2.0 - alpha));
}

double fs_integral(double x, double p, double alpha, long npair, double upper) {
    // 2 * [ series(0,eps) + paired(eps, m) + one-sided(m, upper side) ]
    const double s = (alpha - 1.0) / p;
    const double q = p - 1.0;
    const OmegaSeries o = omega_series(x, s);
    const double m = std::min(x, upper - x);
    const double eps = 1e-3 * m;
    double I = paired_series(o, p, alpha, eps);

    const double hp = (m - eps) / npair;
    double sum = 0.0;
    for (long j = 0; j < npair; ++j) {
        const double u = eps + (j + 0.5) * hp;
        const double dl = o.wx - std::pow(x - u, s);
        const double dr = std::pow(x + u, s) - o.wx;
        sum += (std::pow(dl, q) - std::pow(dr, q)) * std::pow(u, -1.0 - alpha);
    }
    I += sum * hp;

    if (x < upper - x) {
        // right side remainder (omega increasing: integrand negative)
        const long nr = std::max<long>(64, npair / 2);
        const double hr = (upper - x - m) / nr;
        double sr = 0.0;
        for (long j = 0; j < nr; ++j) {
            const double u = m + (j + 0.5) * hr;
            const double dr = std::pow(x + u, s) - o.wx;
            sr -= std::pow(dr, q) * std::pow(u, -1.0 - alpha);
        }
        I += sr * hr;
    } else if (x > upper - x) {
        const long nr = std::max<long>(64, npair / 2);
        const double hr = (x - m) / nr;
        double sr = 0.0;
        for (long j = 0; j < nr; ++j) {
            const double u = m + (j + 0.5) * hr;
            const double dl = o.wx - std::pow(x - u, s);
            sr += std::pow(dl, q) * std::pow(u, -1.0 - alpha);
        }
        I += sr * hr;
    }
    return 2.0 * I / std::pow(o.wx, q);
}

} // namespace

double fs_potential(double x, double p, double alpha, int resolution) {
    if (!(p > 1.0) || !(alpha > 1.0) || !(alpha < p))
        throw ParamError("fs_potential: needs 1 < alpha < p");
    if (!(x > 0.0) || !(x < 1.0)) throw ParamError("fs_potential: x must lie in (0, 1)");
    long npair = std::max(64, resolution);
    double prev = fs_integral(x, p, alpha, npair, 1.0);
    for (int it = 0; it < 12; ++it) {
        npair *= 2;
        const double next = fs_integral(x, p, alpha, npair, 1.0);
        if (std::abs(next - prev) <= 1e-6 * std::abs(next)) return next;
        prev = next;
    }
    throw NonConvergenceError("fs_potential: paired refinement failed to stabilize");
}

HalflineIdentity fs_halfline_identity(double x, double p, double alpha, double Y,
                                      int resolution) {
    if (!(p > 1.0) || !(alpha > 1.0) || !(alpha < p))
        throw ParamError("fs_halfline_identity: needs 1 < alpha < p");
    if (!(x > 0.0) || !(x < 1.0) || !(Y > 2.0))
        throw ParamError("fs_halfline_identity: needs x in (0,1), Y > 2");
    const double s = (alpha - 1.0) / p;
    const double q = p - 1.0;
    const OmegaSeries o = omega_series(x, s);

    // paired part on (0, x), series near zero
    const double eps = 1e-3 * x;
    double I = paired_series(o, p, alpha, eps);
    long npair = std::max(256, resolution);
    double prev = kInf;
    for (int it = 0;; ++it) {
        const double hp = (x - eps) / npair;
        double sum = 0.0;
        for (long j = 0; j < npair; ++j) {
            const double u = eps + (j + 0.5) * hp;
            const double dl = o.wx - std::pow(x - u, s);
            const double dr = std::pow(x + u, s) - o.wx;
            sum += (std::pow(dl, q) - std::pow(dr, q)) * std::pow(u, -1.0 - alpha);
        }
        sum *= hp;
        if (std::abs(sum - prev) <= 1e-8 * std::abs(sum)) {
            I += sum;
            break;
        }
        if (it >= 12)
            throw NonConvergenceError("fs_halfline_identity: pairing failed to stabilize");
        prev = sum;
        npair *= 2;
    }

    // smooth one-sided remainder over (x, Y - x)
    auto g = [&](double u) {
        const double dr = std::pow(x + u, s) - o.wx;
        return -std::pow(dr, q) * std::pow(u, -1.0 - alpha);
    };
    I += adaptive_gk(g, x, Y - x, 1e-10);

    HalflineIdentity out;
    out.value = 2.0 * I / std::pow(o.wx, q);
    out.expected = fs_constant(1, p, alpha) / std::pow(x, alpha);
    // dropped tail: 2 int_Y^inf omega(y)^{p-1} (y-x)^{-1-alpha} dy, integrand
    // decays like y^{s q - 1 - alpha}
    const double m1 = s * q - alpha;
    out.tail_bound = 2.0 * std::pow(1.0 - x / Y, -1.0 - alpha) * std::pow(Y, m1) /
                     std::abs(m1) / std::pow(o.wx, q);
    return out;
}

// ----- half-line energy on the log lattice ----------------------------------------

HalflineEnergy halfline_log_energy(const HalflineTrial& trial, double alpha,
                                   const EnergyOptions& opts) {
    if (!(alpha > 0.0) || !(alpha < 2.0))
        throw ParamError("halfline_log_energy: alpha must lie in (0, 2)");
    const long n = static_cast<long>(trial.values.size());
    if (n < 4) return {};
    const double eta = trial.eta;
    const double q = 2.0 - alpha;
    const int kband = opts.band_radius;
    const std::vector<double>& u = trial.values;

    std::vector<double> t(n), x(n), wfac(n);
    for (long i = 0; i < n; ++i) {
        t[i] = trial.t0 + i * eta;
        x[i] = std::exp(t[i]);
        wfac[i] = std::exp(0.5 * (1.0 - alpha) * t[i]);
    }

    // kernel in log coordinates: |e^t - e^tau|^{-1-alpha} e^t e^tau
    //   = e^{(1-alpha)(t+tau)/2} (2 sinh(|t-tau|/2))^{-1-alpha}
    auto offset_sum = [&](long m) -> double {
        const double J = std::pow(2.0 * std::sinh(0.5 * m * eta), -1.0 - alpha);
        if (J == 0.0) return 0.0;
        double s = 0.0;
        for (long i = 0; i + m < n; ++i) {
            const double d = u[i + m] - u[i];
            if (d == 0.0) continue;
            s += d * d * wfac[i] * wfac[i + m];
        }
        return 2.0 * s * J * eta * eta;
    };
    const long mcount = n - 1 - kband;
    double E = 0.0;
    if (mcount > 0) {
        if (opts.reference)
            E = serial_sum(mcount, [&](long j) { return offset_sum(j + kband + 1); });
        else
            E = blocked_sum(mcount, opts.workers,
                            [&](long j) { return offset_sum(j + kband + 1); });
    }

    // band in the log variable
    const double C = staircase_constant(q, kband) * std::pow(eta, q + 1.0);
    double band = 0.0;
    for (long i = 0; i < n; ++i) {
        const double du = central_diff(u, i, eta);
        if (du != 0.0) band += du * du * wfac[i] * wfac[i];
    }
    E += band * C;

    // exterior tails beyond the lattice window (u extends by zero on (0, inf))
    const double xmin = x.front(), xmax = x.back();
    double tail = 0.0, W = 0.0;
    for (long i = 1; i + 1 < n; ++i) {
        const double ui = u[i];
        if (ui == 0.0) continue;
        const double up = (std::pow(xmax - x[i], -alpha)) / alpha;
        const double lo =
            (std::pow(x[i] - xmin, -alpha) - std::pow(x[i], -alpha)) / alpha;
        tail += ui * ui * (up + lo) * x[i];
        W += ui * ui * std::pow(x[i], 1.0 - alpha);
    }
    E += 2.0 * tail * eta;
    return {E, W * eta};
}

} // namespace frachardy
