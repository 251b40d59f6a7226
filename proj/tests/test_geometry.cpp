#include <doctest.h>

#include "frachardy/constants.hpp"
#include "frachardy/domain.hpp"
#include "frachardy/domain_json.hpp"
#include "frachardy/sphere.hpp"

#include <cmath>
#include <random>

using namespace frachardy;

namespace {

Domain unit_interval() { return make_interval(0.0, 1.0); }
Domain two_intervals() { return make_interval_union({{0.0, 1.0}, {2.0, 3.0}}); }
Domain unit_square() { return make_box(2, {0.0, 0.0, 0.0}, {1.0, 1.0, 0.0}); }
Domain unit_disk() { return make_ball(2, {0.0, 0.0, 0.0}, 1.0); }
Domain upper_halfplane() { return make_halfspace(2, {0.0, 1.0, 0.0}, 0.0); }

Domain slab2d(double width) {
    // 0 < y < width as a two-facet polytope
    std::vector<HalfSpace> facets = {{{0.0, 1.0, 0.0}, 0.0}, {{0.0, -1.0, 0.0}, -width}};
    return make_polytope(2, facets, {0.0, 0.5 * width, 0.0}, false);
}

Domain box_as_polytope2d() {
    std::vector<HalfSpace> facets = {{{1.0, 0.0, 0.0}, 0.0},
                                     {{-1.0, 0.0, 0.0}, -1.0},
                                     {{0.0, 1.0, 0.0}, 0.0},
                                     {{0.0, -1.0, 0.0}, -1.0}};
    return make_polytope(2, facets, {0.5, 0.5, 0.0}, true);
}

Vec rand_unit(std::mt19937& rng, int n) {
    std::normal_distribution<double> g;
    Vec w{};
    double len = 0.0;
    while (len < 1e-6) {
        for (int a = 0; a < n; ++a) w[a] = g(rng);
        len = norm(w, n);
    }
    for (int a = 0; a < n; ++a) w[a] /= len;
    return w;
}

} // namespace

TEST_CASE("ray intervals, basic shapes") {
    {
        auto tr = ray_intervals(unit_interval(), {0.25, 0, 0}, {1, 0, 0});
        REQUIRE(tr.segments.size() == 1);
        CHECK(tr.segments[0].lo == doctest::Approx(-0.25));
        CHECK(tr.segments[0].hi == doctest::Approx(0.75));
    }
    {
        auto tr = ray_intervals(unit_disk(), {0, 0, 0}, {std::sqrt(0.5), std::sqrt(0.5), 0});
        REQUIRE(tr.segments.size() == 1);
        CHECK(tr.segments[0].lo == doctest::Approx(-1.0));
        CHECK(tr.segments[0].hi == doctest::Approx(1.0));
    }
    {
        // half-space, direction pointing at the boundary
        const double d = 0.7;
        Vec w{0.6, -0.8, 0};
        auto tr = ray_intervals(upper_halfplane(), {0.0, d, 0}, w);
        REQUIRE(tr.segments.size() == 1);
        CHECK(std::isinf(tr.segments[0].lo));
        CHECK(tr.segments[0].hi == doctest::Approx(d / 0.8));
    }
    CHECK_THROWS_AS(ray_intervals(unit_interval(), {1.5, 0, 0}, {1, 0, 0}),
                    OutsideDomainError);
}

TEST_CASE("ray intervals agree with a brute-force membership scan") {
    std::mt19937 rng(20240811);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const std::vector<Domain> domains = {unit_interval(), two_intervals(), unit_square(),
                                         unit_disk(), box_as_polytope2d()};
    for (const auto& dom : domains) {
        Vec lo, hi;
        dom.bounding_box(lo, hi);
        int done = 0;
        while (done < 40) {
            Vec x{};
            for (int a = 0; a < dom.n; ++a) x[a] = lo[a] + (hi[a] - lo[a]) * u01(rng);
            if (!dom.contains(x)) continue;
            ++done;
            const Vec w = rand_unit(rng, dom.n);
            const auto tr = ray_intervals(dom, x, w);
            double range = 0.0;
            for (int a = 0; a < dom.n; ++a) range += (hi[a] - lo[a]) * (hi[a] - lo[a]);
            range = std::sqrt(range) + 0.1;
            for (double t = -range; t <= range; t += 1e-3) {
                Vec y{};
                for (int a = 0; a < dom.n; ++a) y[a] = x[a] + t * w[a];
                bool in_trace = false;
                for (const auto& seg : tr.segments)
                    if (seg.lo < t && t < seg.hi) {
                        in_trace = true;
                        break;
                    }
                const bool in_dom = dom.contains(y);
                if (in_trace != in_dom) {
                    // tolerate boundary grazing within 2e-3 of a segment end
                    double dist_to_end = 1e9;
                    for (const auto& seg : tr.segments) {
                        dist_to_end = std::min(dist_to_end, std::abs(t - seg.lo));
                        dist_to_end = std::min(dist_to_end, std::abs(t - seg.hi));
                    }
                    CHECK(dist_to_end <= 2e-3);
                }
            }
        }
    }
}

TEST_CASE("directional distances") {
    {
        auto dd = dir_dist(unit_interval(), {0.25, 0, 0}, {1, 0, 0});
        CHECK(dd.d_w == doctest::Approx(0.25));
        CHECK(dd.delta_w == doctest::Approx(0.75));
    }
    {
        // half-space: d = d(x)/|w_n|, delta = inf
        const double d = 0.4;
        Vec w{std::sqrt(1 - 0.36), -0.6, 0};
        auto dd = dir_dist(upper_halfplane(), {0.0, d, 0}, w);
        CHECK(dd.d_w == doctest::Approx(d / 0.6));
        CHECK(std::isinf(dd.delta_w));
    }
    {
        auto dd = dir_dist(two_intervals(), {0.5, 0, 0}, {1, 0, 0});
        CHECK(dd.d_w == doctest::Approx(0.5));
        CHECK(dd.delta_w == doctest::Approx(2.5));
    }
}

TEST_CASE("directional distances are antipodally symmetric") {
    std::mt19937 rng(7);
    for (const auto& dom : {unit_square(), unit_disk(), two_intervals()}) {
        std::uniform_real_distribution<double> u01(0.05, 0.95);
        for (int rep = 0; rep < 25; ++rep) {
            Vec x{u01(rng), dom.n >= 2 ? u01(rng) : 0.0, 0.0};
            if (!dom.contains(x)) continue;
            Vec w = rand_unit(rng, dom.n);
            Vec mw{-w[0], -w[1], -w[2]};
            auto d1 = dir_dist(dom, x, w);
            auto d2 = dir_dist(dom, x, mw);
            CHECK(d1.d_w == doctest::Approx(d2.d_w).epsilon(1e-12));
            CHECK(d1.delta_w == doctest::Approx(d2.delta_w).epsilon(1e-12));
        }
    }
}

TEST_CASE("domain monotonicity of directional distances") {
    // ball inside box inside slab
    Domain ball = make_ball(2, {0.5, 0.5, 0}, 0.45);
    Domain box = unit_square();
    Domain slab = slab2d(1.0);
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> u01(0.15, 0.85);
    for (int rep = 0; rep < 50; ++rep) {
        Vec x{u01(rng), u01(rng), 0};
        if (!ball.contains(x)) continue;
        Vec w = rand_unit(rng, 2);
        auto db = dir_dist(ball, x, w);
        auto dB = dir_dist(box, x, w);
        auto dS = dir_dist(slab, x, w);
        CHECK(db.d_w <= dB.d_w + 1e-12);
        CHECK(db.delta_w <= dB.delta_w + 1e-12);
        CHECK(dB.d_w <= dS.d_w + 1e-12);
        CHECK(dB.delta_w <= dS.delta_w + 1e-12);
    }
}

TEST_CASE("distance to boundary") {
    CHECK(dist_to_boundary(unit_disk(), {0, 0, 0}) == doctest::Approx(1.0));
    CHECK(dist_to_boundary(unit_square(), {0.3, 0.2, 0}) == doctest::Approx(0.2));
    CHECK(dist_to_boundary(two_intervals(), {2.9, 0, 0}) == doctest::Approx(0.1));
    CHECK(dist_to_boundary(box_as_polytope2d(), {0.3, 0.2, 0}) == doctest::Approx(0.2));
    CHECK(dist_to_boundary(upper_halfplane(), {3.0, 0.7, 0}) == doctest::Approx(0.7));
    CHECK_THROWS_AS(dist_to_boundary(unit_disk(), {2, 0, 0}), OutsideDomainError);
}

TEST_CASE("slab width") {
    CHECK(width(unit_square(), {0.3, 0.2, 0}) == doctest::Approx(1.0));
    CHECK(width(unit_disk(), {0.5, 0.0, 0}) == doctest::Approx(2.0));
    CHECK(width(unit_disk(), {0.0, 0.0, 0}) == doctest::Approx(2.0));
    CHECK(std::isinf(width(upper_halfplane(), {0.0, 2.0, 0})));
    CHECK(width(slab2d(3.0), {10.0, 1.0, 0}) == doctest::Approx(3.0));
    CHECK(width(box_as_polytope2d(), {0.3, 0.2, 0}) == doctest::Approx(1.0));
    CHECK(width(make_interval(2.0, 5.0), {3.0, 0, 0}) == doctest::Approx(3.0));
    // anisotropic box: nearest face decides which slab
    Domain thin = make_box(2, {0, 0, 0}, {4.0, 1.0, 0});
    CHECK(width(thin, {2.0, 0.2, 0}) == doctest::Approx(1.0)); // nearest face y = 0
    CHECK(width(thin, {0.1, 0.5, 0}) == doctest::Approx(4.0)); // nearest face x = 0
    CHECK_THROWS_AS(width(two_intervals(), {0.5, 0, 0}), ParamError);
}

TEST_CASE("polytope support function") {
    const Domain dom = box_as_polytope2d();
    const auto& poly = std::get<Polytope>(dom.shape);
    CHECK(polytope_support(poly, 2, {1, 0, 0}) == doctest::Approx(1.0));
    CHECK(polytope_support(poly, 2, {0, -1, 0}) == doctest::Approx(0.0));
    Vec diag{std::sqrt(0.5), std::sqrt(0.5), 0};
    CHECK(polytope_support(poly, 2, diag) == doctest::Approx(std::sqrt(2.0)));
    // wedge: unbounded in the diagonal direction
    std::vector<HalfSpace> wf = {{{1, 0, 0}, 0.0}, {{0, 1, 0}, 0.0}};
    Polytope wedge{wf, {1, 1, 0}, false};
    CHECK(std::isinf(polytope_support(wedge, 2, {1, 0, 0})));
    CHECK(polytope_support(wedge, 2, {-1, 0, 0}) == doctest::Approx(0.0));
}

TEST_CASE("empty-interior polytope is rejected") {
    std::vector<HalfSpace> facets = {{{1, 0, 0}, 0.0}, {{-1, 0, 0}, 0.5}};
    CHECK_THROWS_AS(make_polytope(2, facets, {0.2, 0, 0}, false), ParamError);
}

TEST_CASE("sphere quadrature: totals and symmetry") {
    {
        auto q = build_sphere_quadrature(1, 0);
        REQUIRE(q.size() == 2);
        CHECK(q.total_weight() == doctest::Approx(2.0));
        CHECK(q.antipodally_symmetric());
    }
    {
        auto q = build_sphere_quadrature(2, 360);
        CHECK(q.total_weight() == doctest::Approx(2.0 * M_PI).epsilon(1e-12));
        CHECK(q.antipodally_symmetric());
    }
    {
        auto q = build_sphere_quadrature(3, 32);
        CHECK(q.total_weight() == doctest::Approx(4.0 * M_PI).epsilon(1e-12));
        CHECK(q.antipodally_symmetric());
    }
    CHECK_THROWS_AS(build_sphere_quadrature(4, 16), ParamError);
}

TEST_CASE("sphere quadrature reproduces the axis-moment closed form") {
    for (int n : {2, 3}) {
        auto q = build_sphere_quadrature(n, n == 2 ? 2048 : 64);
        for (double a : {1.1, 1.5, 1.9}) {
            double s = 0.0;
            for (std::size_t k = 0; k < q.size(); ++k)
                s += q.weights[k] * std::pow(std::abs(q.nodes[k][n - 1]), a);
            const double exact = sphere_alpha_integral(n, a);
            CHECK(std::abs(s - exact) <= 1e-6 * exact);
        }
    }
}

TEST_CASE("m weight: half-space, interval, disk center") {
    const double alpha = 1.5;
    {
        // half-space: 1/M^alpha == d^{-alpha} exactly in the limit
        auto q = build_sphere_quadrature(2, 2048);
        const double d = 0.35;
        const double w = m_weight(upper_halfplane(), {0.2, d, 0}, alpha, q, true);
        CHECK(std::abs(w - std::pow(d, -alpha)) <= 1e-4 * std::pow(d, -alpha));
    }
    {
        auto q1 = build_sphere_quadrature(1, 0);
        const double w =
            m_weight(make_interval(-1.0, 1.0), {0.0, 0, 0}, alpha, q1, true);
        CHECK(w == doctest::Approx(std::pow(2.0, alpha)).epsilon(1e-12));
    }
    {
        auto q = build_sphere_quadrature(2, 512);
        const double w = m_weight(unit_disk(), {0, 0, 0}, alpha, q, true);
        const double expected =
            std::pow(2.0, alpha) * 2.0 * M_PI / sphere_alpha_integral(2, alpha);
        CHECK(w == doctest::Approx(expected).epsilon(1e-10));
        CHECK(w >= std::pow(2.0, alpha));
    }
}

TEST_CASE("convex weight formulas") {
    const double alpha = 1.3;
    // half-space: second reciprocal vanishes
    CHECK(convex_weight(upper_halfplane(), {0, 0.5, 0}, alpha) ==
          doctest::Approx(std::pow(2.0, alpha)));
    // interval: matches the two-sided interval weight
    CHECK(convex_weight(make_interval(0, 1), {0.25, 0, 0}, alpha) ==
          doctest::Approx(std::pow(1.0 / 0.25 + 1.0 / 0.75, alpha)));
    // ball at |x| = 0.5: d = 0.5, D = 2
    CHECK(convex_weight(unit_disk(), {0.5, 0, 0}, alpha) ==
          doctest::Approx(std::pow(8.0 / 3.0, alpha)));
}

TEST_CASE("slab bound pointwise (two-sided reciprocal vs projected slab)") {
    // for convex domains and every direction:
    //   [1/d_w + 1/delta_w]^alpha >= |w.nu|^alpha [1/d + 1/(D_S - d)]^alpha
    std::mt19937 rng(512);
    std::uniform_real_distribution<double> u01(0.1, 0.9);
    for (const auto& dom : {unit_square(), unit_disk(), slab2d(1.0)}) {
        for (int rep = 0; rep < 20; ++rep) {
            Vec x{u01(rng), u01(rng), 0};
            if (!dom.contains(x)) continue;
            const double d = dist_to_boundary(dom, x);
            const double D = width(dom, x);
            const double cw = 1.0 / d + (std::isinf(D) ? 0.0 : 1.0 / (D - d));
            // the nearest-facet normal: probe axis directions for these shapes
            for (int rep2 = 0; rep2 < 20; ++rep2) {
                Vec w = rand_unit(rng, 2);
                auto dd = dir_dist(dom, x, w);
                const double lhs =
                    (std::isinf(dd.d_w) ? 0.0 : 1.0 / dd.d_w) +
                    (std::isinf(dd.delta_w) ? 0.0 : 1.0 / dd.delta_w);
                // supporting-plane normal: for these domains the weight bound
                // holds with the normal at the nearest boundary point
                Vec nu{};
                if (std::holds_alternative<Ball>(dom.shape)) {
                    const double nx = norm(x, 2);
                    nu = {x[0] / nx, x[1] / nx, 0};
                } else if (std::holds_alternative<Polytope>(dom.shape)) {
                    nu = {0, x[1] < 0.5 ? -1.0 : 1.0, 0}; // slab facets
                } else {
                    // unit square: nearest face
                    double best = 2.0;
                    for (int axis = 0; axis < 2; ++axis)
                        for (int side = 0; side < 2; ++side) {
                            const double sl = side ? 1.0 - x[axis] : x[axis];
                            if (sl < best) {
                                best = sl;
                                nu = {0, 0, 0};
                                nu[axis] = side ? 1.0 : -1.0;
                            }
                        }
                }
                const double proj = std::abs(dot(w, nu, 2));
                for (double a : {1.25, 1.5, 1.75})
                    CHECK(std::pow(lhs, a) >= std::pow(proj, a) * std::pow(cw, a) - 1e-10);
            }
        }
    }
}

TEST_CASE("averaged weight dominates the convex bound (quadrature slack)") {
    auto q = build_sphere_quadrature(2, 1024);
    std::mt19937 rng(81);
    std::uniform_real_distribution<double> u01(0.08, 0.92);
    for (const auto& dom : {unit_square(), unit_disk()}) {
        for (int rep = 0; rep < 30; ++rep) {
            Vec x{u01(rng), u01(rng), 0};
            if (!dom.contains(x)) continue;
            for (double a : {1.25, 1.5, 1.75}) {
                const double lhs = m_weight(dom, x, a, q, true);
                const double rhs = convex_weight(dom, x, a);
                CHECK(lhs >= rhs * (1.0 - 1e-6));
            }
        }
    }
}

TEST_CASE("domain JSON round trip") {
    const std::vector<Domain> domains = {
        unit_interval(), two_intervals(),  unit_square(),
        unit_disk(),     upper_halfplane(), box_as_polytope2d(),
        make_convex_union({make_ball(2, {0, 0, 0}, 1.0), make_ball(2, {3, 0, 0}, 1.0)})};
    for (const auto& dom : domains) {
        const auto j = domain_to_json(dom);
        const Domain back = domain_from_json(j);
        CHECK(domain_to_json(back).dump() == j.dump());
        CHECK(back.kind_name() == dom.kind_name());
        CHECK(back.n == dom.n);
    }
    CHECK_THROWS_AS(domain_from_json(nlohmann::json{{"type", "moebius"}}), ParamError);
}

TEST_CASE("convex union distances take the own part's boundary") {
    Domain cu = make_convex_union({make_ball(2, {0, 0, 0}, 1.0), make_ball(2, {3, 0, 0}, 1.0)});
    CHECK(dist_to_boundary(cu, {0.2, 0, 0}) == doctest::Approx(0.8));
    auto dd = dir_dist(cu, {0, 0, 0}, {1, 0, 0});
    CHECK(dd.d_w == doctest::Approx(1.0));
    CHECK(dd.delta_w == doctest::Approx(4.0)); // far side of the second ball
}
