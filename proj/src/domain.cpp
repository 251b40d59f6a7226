#include "frachardy/domain.hpp"
#include "frachardy/constants.hpp"

#include <algorithm>
#include <cmath>

namespace frachardy {

namespace {

constexpr double kTieTol = 1e-12;

void check_dim(int n) {
    if (n < 1 || n > 3) throw ParamError("domain: dimension must be 1, 2 or 3");
}

// Intersect sorted segment lists (both open).
std::vector<RayTrace::Seg> intersect_segs(const std::vector<RayTrace::Seg>& a,
                                          const std::vector<RayTrace::Seg>& b) {
    std::vector<RayTrace::Seg> out;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const double lo = std::max(a[i].lo, b[j].lo);
        const double hi = std::min(a[i].hi, b[j].hi);
        if (lo < hi) out.push_back({lo, hi});
        if (a[i].hi < b[j].hi)
            ++i;
        else
            ++j;
    }
    return out;
}

std::vector<RayTrace::Seg> merge_segs(std::vector<RayTrace::Seg> segs) {
    std::sort(segs.begin(), segs.end(),
              [](const RayTrace::Seg& u, const RayTrace::Seg& v) { return u.lo < v.lo; });
    std::vector<RayTrace::Seg> out;
    for (const auto& s : segs) {
        if (!out.empty() && s.lo <= out.back().hi) {
            out.back().hi = std::max(out.back().hi, s.hi);
        } else {
            out.push_back(s);
        }
    }
    return out;
}

// trace of { t : <nu, x + t w> > c }
std::vector<RayTrace::Seg> halfspace_trace(const Vec& nu, double c, const Vec& x, const Vec& w,
                                           int n) {
    const double a = dot(nu, w, n);
    const double b = dot(nu, x, n) - c;
    if (std::abs(a) < 1e-15) {
        if (b > 0.0) return {{-kInf, kInf}};
        return {};
    }
    const double t0 = -b / a;
    if (a > 0.0) return {{t0, kInf}};
    return {{-kInf, t0}};
}

// Trace without the membership precondition (needed for union parts the base
// point is not inside of).
std::vector<RayTrace::Seg> trace_shape(const Domain& dom, const Vec& x, const Vec& w) {
    const int n = dom.n;
    return std::visit(
        [&](const auto& s) -> std::vector<RayTrace::Seg> {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Interval>) {
                const double t1 = (s.a - x[0]) / w[0];
                const double t2 = (s.b - x[0]) / w[0];
                return {{std::min(t1, t2), std::max(t1, t2)}};
            } else if constexpr (std::is_same_v<T, IntervalUnion>) {
                std::vector<RayTrace::Seg> segs;
                for (const auto& iv : s.parts) {
                    const double t1 = (iv.a - x[0]) / w[0];
                    const double t2 = (iv.b - x[0]) / w[0];
                    segs.push_back({std::min(t1, t2), std::max(t1, t2)});
                }
                return merge_segs(std::move(segs));
            } else if constexpr (std::is_same_v<T, Box>) {
                std::vector<RayTrace::Seg> acc{{-kInf, kInf}};
                for (int i = 0; i < n; ++i) {
                    Vec nu{};
                    nu[i] = 1.0;
                    acc = intersect_segs(acc, halfspace_trace(nu, s.lo[i], x, w, n));
                    nu[i] = -1.0;
                    acc = intersect_segs(acc, halfspace_trace(nu, -s.hi[i], x, w, n));
                }
                return acc;
            } else if constexpr (std::is_same_v<T, Ball>) {
                Vec d{};
                for (int i = 0; i < n; ++i) d[i] = x[i] - s.center[i];
                const double b = dot(d, w, n);
                const double c = dot(d, d, n) - s.radius * s.radius;
                const double disc = b * b - c; // |w| = 1
                if (disc <= 0.0) return {};
                const double r = std::sqrt(disc);
                return {{-b - r, -b + r}};
            } else if constexpr (std::is_same_v<T, HalfSpace>) {
                return halfspace_trace(s.normal, s.offset, x, w, n);
            } else if constexpr (std::is_same_v<T, Polytope>) {
                std::vector<RayTrace::Seg> acc{{-kInf, kInf}};
                for (const auto& f : s.facets)
                    acc = intersect_segs(acc, halfspace_trace(f.normal, f.offset, x, w, n));
                return acc;
            } else {
                std::vector<RayTrace::Seg> segs;
                for (const auto& p : s.parts) {
                    auto ps = trace_shape(p, x, w);
                    segs.insert(segs.end(), ps.begin(), ps.end());
                }
                return merge_segs(std::move(segs));
            }
        },
        dom.shape);
}

} // namespace

// ----- constructors ---------------------------------------------------------

Domain make_interval(double a, double b) {
    if (!(a < b)) throw ParamError("interval: requires a < b");
    Domain d;
    d.n = 1;
    d.shape = Interval{a, b};
    return d;
}

Domain make_interval_union(std::vector<Interval> parts) {
    if (parts.empty()) throw ParamError("interval_union: needs at least one interval");
    std::sort(parts.begin(), parts.end(),
              [](const Interval& u, const Interval& v) { return u.a < v.a; });
    for (std::size_t k = 0; k < parts.size(); ++k) {
        if (!(parts[k].a < parts[k].b)) throw ParamError("interval_union: requires a < b");
        if (k && parts[k].a < parts[k - 1].b)
            throw ParamError("interval_union: intervals must be pairwise disjoint");
    }
    Domain d;
    d.n = 1;
    d.shape = IntervalUnion{std::move(parts)};
    return d;
}

Domain make_box(int n, const Vec& lo, const Vec& hi) {
    check_dim(n);
    for (int i = 0; i < n; ++i)
        if (!(lo[i] < hi[i])) throw ParamError("box: requires lo < hi per axis");
    Domain d;
    d.n = n;
    d.shape = Box{lo, hi};
    return d;
}

Domain make_ball(int n, const Vec& center, double radius) {
    check_dim(n);
    if (!(radius > 0.0)) throw ParamError("ball: radius must be positive");
    Domain d;
    d.n = n;
    d.shape = Ball{center, radius};
    return d;
}

Domain make_halfspace(int n, const Vec& inward_normal, double offset) {
    check_dim(n);
    const double len = norm(inward_normal, n);
    if (!(len > 0.0)) throw ParamError("halfspace: normal must be nonzero");
    HalfSpace h;
    h.normal = {0.0, 0.0, 0.0};
    for (int i = 0; i < n; ++i) h.normal[i] = inward_normal[i] / len;
    h.offset = offset / len;
    Domain d;
    d.n = n;
    d.shape = h;
    return d;
}

Domain make_polytope(int n, std::vector<HalfSpace> facets, const Vec& interior_point,
                     bool bounded) {
    check_dim(n);
    if (facets.empty()) throw ParamError("polytope: needs at least one half-space");
    for (auto& f : facets) {
        const double len = norm(f.normal, n);
        if (!(len > 0.0)) throw ParamError("polytope: facet normal must be nonzero");
        for (int i = 0; i < n; ++i) f.normal[i] /= len;
        for (int i = n; i < 3; ++i) f.normal[i] = 0.0;
        f.offset /= len;
        if (!(dot(f.normal, interior_point, n) > f.offset))
            throw ParamError("polytope: interior point does not satisfy every facet strictly");
    }
    Domain d;
    d.n = n;
    d.shape = Polytope{std::move(facets), interior_point, bounded};
    return d;
}

Domain make_convex_union(std::vector<Domain> parts) {
    if (parts.empty()) throw ParamError("convex_union: needs at least one part");
    const int n = parts.front().n;
    for (const auto& p : parts) {
        if (p.n != n) throw ParamError("convex_union: mixed dimensions");
        if (!p.is_convex()) throw ParamError("convex_union: every part must be convex");
    }
    Domain d;
    d.n = n;
    d.shape = ConvexUnion{std::move(parts)};
    return d;
}

// ----- basic queries --------------------------------------------------------

bool Domain::contains(const Vec& x) const {
    return std::visit(
        [&](const auto& s) -> bool {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Interval>) {
                return s.a < x[0] && x[0] < s.b;
            } else if constexpr (std::is_same_v<T, IntervalUnion>) {
                for (const auto& iv : s.parts)
                    if (iv.a < x[0] && x[0] < iv.b) return true;
                return false;
            } else if constexpr (std::is_same_v<T, Box>) {
                for (int i = 0; i < n; ++i)
                    if (!(s.lo[i] < x[i] && x[i] < s.hi[i])) return false;
                return true;
            } else if constexpr (std::is_same_v<T, Ball>) {
                Vec d{};
                for (int i = 0; i < n; ++i) d[i] = x[i] - s.center[i];
                return norm(d, n) < s.radius;
            } else if constexpr (std::is_same_v<T, HalfSpace>) {
                return dot(s.normal, x, n) > s.offset;
            } else if constexpr (std::is_same_v<T, Polytope>) {
                for (const auto& f : s.facets)
                    if (!(dot(f.normal, x, n) > f.offset)) return false;
                return true;
            } else {
                for (const auto& p : s.parts)
                    if (p.contains(x)) return true;
                return false;
            }
        },
        shape);
}

bool Domain::is_convex() const {
    return std::visit(
        [&](const auto& s) -> bool {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, IntervalUnion>)
                return s.parts.size() == 1;
            else if constexpr (std::is_same_v<T, ConvexUnion>)
                return s.parts.size() == 1;
            else
                return true;
        },
        shape);
}

bool Domain::is_bounded() const {
    return std::visit(
        [&](const auto& s) -> bool {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, HalfSpace>)
                return false;
            else if constexpr (std::is_same_v<T, Polytope>)
                return s.bounded;
            else if constexpr (std::is_same_v<T, ConvexUnion>) {
                for (const auto& p : s.parts)
                    if (!p.is_bounded()) return false;
                return true;
            } else
                return true;
        },
        shape);
}

void Domain::bounding_box(Vec& lo, Vec& hi) const {
    lo = {-kInf, -kInf, -kInf};
    hi = {kInf, kInf, kInf};
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Interval>) {
                lo[0] = s.a;
                hi[0] = s.b;
            } else if constexpr (std::is_same_v<T, IntervalUnion>) {
                lo[0] = s.parts.front().a;
                hi[0] = s.parts.back().b;
            } else if constexpr (std::is_same_v<T, Box>) {
                lo = s.lo;
                hi = s.hi;
            } else if constexpr (std::is_same_v<T, Ball>) {
                for (int i = 0; i < n; ++i) {
                    lo[i] = s.center[i] - s.radius;
                    hi[i] = s.center[i] + s.radius;
                }
            } else if constexpr (std::is_same_v<T, Polytope>) {
                if (s.bounded) {
                    for (int i = 0; i < n; ++i) {
                        Vec e{};
                        e[i] = 1.0;
                        hi[i] = polytope_support(s, n, e);
                        Vec em{};
                        em[i] = -1.0;
                        lo[i] = -polytope_support(s, n, em);
                    }
                }
            } else if constexpr (std::is_same_v<T, ConvexUnion>) {
                for (int i = 0; i < n; ++i) {
                    lo[i] = kInf;
                    hi[i] = -kInf;
                }
                for (const auto& p : s.parts) {
                    Vec plo, phi;
                    p.bounding_box(plo, phi);
                    for (int i = 0; i < n; ++i) {
                        lo[i] = std::min(lo[i], plo[i]);
                        hi[i] = std::max(hi[i], phi[i]);
                    }
                }
            }
        },
        shape);
}

std::string Domain::kind_name() const {
    return std::visit(
        [](const auto& s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Interval>)
                return "interval";
            else if constexpr (std::is_same_v<T, IntervalUnion>)
                return "interval_union";
            else if constexpr (std::is_same_v<T, Box>)
                return "box";
            else if constexpr (std::is_same_v<T, Ball>)
                return "ball";
            else if constexpr (std::is_same_v<T, HalfSpace>)
                return "halfspace";
            else if constexpr (std::is_same_v<T, Polytope>)
                return "polytope";
            else
                return "convex_union";
        },
        shape);
}

// ----- ray tracing ----------------------------------------------------------

const RayTrace::Seg& RayTrace::at_origin() const {
    for (const auto& s : segments)
        if (s.lo < 0.0 && 0.0 < s.hi) return s;
    throw OutsideDomainError("ray trace: no segment contains t = 0");
}

RayTrace ray_intervals(const Domain& dom, const Vec& x, const Vec& w) {
    if (!dom.contains(x))
        throw OutsideDomainError("ray_intervals: base point is not in the domain");
    RayTrace out;
    out.segments = trace_shape(dom, x, w);
    return out;
}

DirDist dir_dist(const Domain& dom, const Vec& x, const Vec& w) {
    const RayTrace tr = ray_intervals(dom, x, w);
    const auto& seg0 = tr.at_origin();
    const double d = std::min(-seg0.lo, seg0.hi);
    const double lo = tr.segments.front().lo;
    const double hi = tr.segments.back().hi;
    const double delta = std::max(-lo, hi);
    return {d, delta};
}

// ----- boundary distance ----------------------------------------------------

double dist_to_boundary(const Domain& dom, const Vec& x) {
    if (!dom.contains(x))
        throw OutsideDomainError("dist_to_boundary: point is not in the domain");
    const int n = dom.n;
    return std::visit(
        [&](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Interval>) {
                return std::min(x[0] - s.a, s.b - x[0]);
            } else if constexpr (std::is_same_v<T, IntervalUnion>) {
                for (const auto& iv : s.parts)
                    if (iv.a < x[0] && x[0] < iv.b)
                        return std::min(x[0] - iv.a, iv.b - x[0]);
                throw OutsideDomainError("dist_to_boundary: point is not in the union");
            } else if constexpr (std::is_same_v<T, Box>) {
                double d = kInf;
                for (int i = 0; i < n; ++i)
                    d = std::min(d, std::min(x[i] - s.lo[i], s.hi[i] - x[i]));
                return d;
            } else if constexpr (std::is_same_v<T, Ball>) {
                Vec d{};
                for (int i = 0; i < n; ++i) d[i] = x[i] - s.center[i];
                return s.radius - norm(d, n);
            } else if constexpr (std::is_same_v<T, HalfSpace>) {
                return dot(s.normal, x, n) - s.offset;
            } else if constexpr (std::is_same_v<T, Polytope>) {
                double d = kInf;
                for (const auto& f : s.facets)
                    d = std::min(d, dot(f.normal, x, n) - f.offset);
                return d;
            } else {
                // disjoint convex parts: the nearest boundary belongs to the
                // part containing x
                for (const auto& p : s.parts)
                    if (p.contains(x)) return dist_to_boundary(p, x);
                throw OutsideDomainError("dist_to_boundary: point is not in any part");
            }
        },
        dom.shape);
}

// ----- support function and slab width --------------------------------------

namespace {

// Solve the m x m system G lambda = rhs by Gaussian elimination; returns false
// when near-singular.
bool solve_small(int m, double G[3][3], double rhs[3], double* lambda) {
    int piv[3] = {0, 1, 2};
    for (int k = 0; k < m; ++k) {
        int best = k;
        for (int r = k + 1; r < m; ++r)
            if (std::abs(G[piv[r]][k]) > std::abs(G[piv[best]][k])) best = r;
        std::swap(piv[k], piv[best]);
        const double pvv = G[piv[k]][k];
        if (std::abs(pvv) < 1e-13) return false;
        for (int r = k + 1; r < m; ++r) {
            const double f = G[piv[r]][k] / pvv;
            for (int c = k; c < m; ++c) G[piv[r]][c] -= f * G[piv[k]][c];
            rhs[piv[r]] -= f * rhs[piv[k]];
        }
    }
    for (int k = m - 1; k >= 0; --k) {
        double s = rhs[piv[k]];
        for (int c = k + 1; c < m; ++c) s -= G[piv[k]][c] * lambda[c];
        lambda[k] = s / G[piv[k]][k];
    }
    return true;
}

} // namespace

double polytope_support(const Polytope& poly, int n, const Vec& dir) {
    // h(dir) = min { -sum lambda_j c_j : sum lambda_j nu_j = -dir, lambda >= 0 }
    // over dual basic solutions with support size <= n. No feasible subset
    // means the polytope is unbounded in this direction.
    const int m = static_cast<int>(poly.facets.size());
    double best = kInf;
    std::vector<int> idx;
    const double lam_tol = 1e-10;
    const double res_tol = 1e-9;

    auto try_subset = [&](const std::vector<int>& S) {
        const int k = static_cast<int>(S.size());
        // least squares: (N^T N) lambda = -N^T dir with N columns nu_j
        double G[3][3] = {};
        double rhs[3] = {};
        for (int a = 0; a < k; ++a) {
            for (int b = 0; b < k; ++b)
                G[a][b] = dot(poly.facets[S[a]].normal, poly.facets[S[b]].normal, n);
            rhs[a] = -dot(poly.facets[S[a]].normal, dir, n);
        }
        double lambda[3] = {};
        if (!solve_small(k, G, rhs, lambda)) return;
        // verify residual and sign constraints
        Vec r{};
        for (int i = 0; i < n; ++i) r[i] = dir[i];
        for (int a = 0; a < k; ++a) {
            if (lambda[a] < -lam_tol) return;
            for (int i = 0; i < n; ++i) r[i] += lambda[a] * poly.facets[S[a]].normal[i];
        }
        if (norm(r, n) > res_tol) return;
        double val = 0.0;
        for (int a = 0; a < k; ++a) val -= lambda[a] * poly.facets[S[a]].offset;
        best = std::min(best, val);
    };

    for (int i = 0; i < m; ++i) {
        try_subset({i});
        for (int j = i + 1; j < m && n >= 2; ++j) {
            try_subset({i, j});
            for (int k = j + 1; k < m && n >= 3; ++k) try_subset({i, j, k});
        }
    }
    return best;
}

double width(const Domain& dom, const Vec& x) {
    if (!dom.is_convex())
        throw ParamError("width: domain must be convex");
    if (!dom.contains(x))
        throw OutsideDomainError("width: point is not in the domain");
    const int n = dom.n;
    return std::visit(
        [&](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Interval>) {
                return s.b - s.a;
            } else if constexpr (std::is_same_v<T, IntervalUnion>) {
                return s.parts.front().b - s.parts.front().a;
            } else if constexpr (std::is_same_v<T, Box>) {
                double dmin = kInf;
                for (int i = 0; i < n; ++i)
                    dmin = std::min(dmin, std::min(x[i] - s.lo[i], s.hi[i] - x[i]));
                double D = kInf;
                for (int i = 0; i < n; ++i) {
                    const double sl = std::min(x[i] - s.lo[i], s.hi[i] - x[i]);
                    if (sl <= dmin * (1.0 + kTieTol))
                        D = std::min(D, s.hi[i] - s.lo[i]);
                }
                return D;
            } else if constexpr (std::is_same_v<T, Ball>) {
                return 2.0 * s.radius;
            } else if constexpr (std::is_same_v<T, HalfSpace>) {
                return kInf;
            } else if constexpr (std::is_same_v<T, Polytope>) {
                // Nearest boundary points of an interior point project into
                // facet relative interiors, so the candidate planes are
                // exactly the minimum-slack facets.
                double dmin = kInf;
                for (const auto& f : s.facets)
                    dmin = std::min(dmin, dot(f.normal, x, n) - f.offset);
                double D = kInf;
                for (const auto& f : s.facets) {
                    const double sl = dot(f.normal, x, n) - f.offset;
                    if (sl <= dmin * (1.0 + kTieTol) + kTieTol) {
                        const double h = polytope_support(s, n, f.normal);
                        D = std::min(D, h - f.offset);
                    }
                }
                return D;
            } else {
                return width(s.parts.front(), x);
            }
        },
        dom.shape);
}

// ----- averaged weights -----------------------------------------------------

double m_weight(const Domain& dom, const Vec& x, double alpha, const SphereQuadrature& quad,
                bool two_sided) {
    if (quad.n != dom.n)
        throw ParamError("m_weight: quadrature dimension does not match the domain");
    if (!quad.antipodally_symmetric())
        throw ParamError("m_weight: sphere quadrature is not antipodally symmetric");
    double acc = 0.0;
    for (std::size_t k = 0; k < quad.size(); ++k) {
        Vec w{};
        for (int i = 0; i < dom.n; ++i) w[i] = quad.nodes[k][i];
        const DirDist dd = dir_dist(dom, x, w);
        double term;
        if (two_sided) {
            const double a = std::isinf(dd.d_w) ? 0.0 : 1.0 / dd.d_w;
            const double b = std::isinf(dd.delta_w) ? 0.0 : 1.0 / dd.delta_w;
            term = std::pow(a + b, alpha);
        } else {
            term = std::isinf(dd.d_w) ? 0.0 : std::pow(dd.d_w, -alpha);
        }
        acc += quad.weights[k] * term;
    }
    return acc / axis_moment(dom.n, alpha);
}

double convex_weight(const Domain& dom, const Vec& x, double alpha) {
    const double d = dist_to_boundary(dom, x);
    const double D = width(dom, x);
    const double second = std::isinf(D) ? 0.0 : 1.0 / (D - d);
    return std::pow(1.0 / d + second, alpha);
}

} // namespace frachardy
