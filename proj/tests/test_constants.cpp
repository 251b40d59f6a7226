#include <doctest.h>

#include "frachardy/constants.hpp"
#include "oracles.hpp"

#include <cmath>
#include <vector>

using namespace frachardy;

TEST_CASE("gamma identities") {
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-13));
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-13));
}

TEST_CASE("gamma against the standard library over the working range") {
    for (double x = 0.02; x <= 50.0; x += 0.173) {
        const double mine = gamma_fn(x);
        const double ref = std::tgamma(x);
        CHECK(std::abs(mine - ref) <= 1e-12 * std::abs(ref));
    }
}

TEST_CASE("gamma domain errors") {
    CHECK_THROWS_AS(gamma_fn(0.0), ParamError);
    CHECK_THROWS_AS(gamma_fn(-2.0), ParamError);
    CHECK_THROWS_AS(gamma_fn(50.5), ParamError);
}

TEST_CASE("sphere integral closed forms") {
    CHECK(sphere_alpha_integral(1, 0.7) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(sphere_alpha_integral(1, 1.9) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(sphere_alpha_integral(2, 2.0) == doctest::Approx(M_PI).epsilon(1e-13));
    CHECK(sphere_alpha_integral(3, 2.0) == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-13));
    // frozen high-precision values
    CHECK(sphere_alpha_integral(2, 1.5) ==
          doctest::Approx(3.4960767390561597).epsilon(1e-12));
    CHECK(sphere_alpha_integral(3, 1.5) ==
          doctest::Approx(5.0265482457436692).epsilon(1e-12));
    CHECK_THROWS_AS(sphere_alpha_integral(0, 1.0), ParamError);
    CHECK_THROWS_AS(sphere_alpha_integral(2, 2.5), ParamError);
}

TEST_CASE("kappa vanishes exactly at alpha = 1") {
    for (int n = 1; n <= 4; ++n) CHECK(std::abs(kappa(n, 1.0)) <= 1e-12);
}

TEST_CASE("kappa frozen high-precision values") {
    CHECK(kappa(1, 1.5) == doctest::Approx(0.20735251809737327).epsilon(1e-12));
    CHECK(kappa(2, 1.5) == doctest::Approx(0.36246015765247405).epsilon(1e-12));
    CHECK(kappa(3, 1.25) == doctest::Approx(0.13198232744065571).epsilon(1e-12));
    CHECK(kappa(2, 1.75) == doctest::Approx(1.1771804042689009).epsilon(1e-12));
    CHECK(kappa(1, 0.5) == doctest::Approx(0.39628046947118441).epsilon(1e-12));
}

TEST_CASE("kappa sign structure on the alpha grid") {
    for (int n : {1, 2, 3, 4}) {
        for (double a = 0.01; a < 2.0; a += 0.01) {
            const double v = kappa(n, a);
            if (std::abs(a - 1.0) < 1e-12)
                CHECK(std::abs(v) <= 1e-12);
            else
                CHECK(v > 0.0);
        }
    }
    CHECK_THROWS_AS(kappa(1, 2.0), ParamError);
    CHECK_THROWS_AS(kappa(1, 0.0), ParamError);
}

TEST_CASE("fs constant equals twice kappa at p = 2") {
    for (int n : {1, 2, 3}) {
        for (double a = 1.05; a < 1.999; a += 0.05) {
            const double lhs = fs_constant(n, 2.0, a);
            const double rhs = 2.0 * kappa(n, a);
            CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
        }
    }
}

TEST_CASE("fs constant frozen values and cross-scheme oracle") {
    CHECK(fs_constant(1, 3.0, 2.0) == doctest::Approx(0.20919957615614523).epsilon(1e-9));
    CHECK(fs_constant(1, 2.5, 1.25) == doctest::Approx(0.021860992184826775).epsilon(1e-9));
    CHECK(fs_constant(2, 3.0, 2.0) == doctest::Approx(0.32860992579312217).epsilon(1e-9));

    // independent tanh-sinh evaluation of the r-integral (different node family)
    const double p = 3.0, a = 2.0;
    const double s = (a - 1.0) / p;
    auto integrand = [&](double r) {
        return std::pow(std::abs(1.0 - std::pow(r, s)), p) * std::pow(1.0 - r, -1.0 - a);
    };
    const double I = oracles::tanh_sinh(integrand, 0.0, 1.0, 1e-13);
    const double ref = axis_moment(2, a) * I;
    CHECK(std::abs(fs_constant(2, p, a) - ref) <= 1e-8 * ref);
}

TEST_CASE("fs constant near-degenerate window and parameter errors") {
    CHECK(fs_constant(1, 2.0, 1.0005) < 5e-3);
    CHECK_THROWS_AS(fs_constant(1, 2.0, 2.0), ParamError);
    CHECK_THROWS_AS(fs_constant(1, 2.0, 0.9), ParamError);
    CHECK_THROWS_AS(fs_constant(1, 0.5, 0.2), ParamError);
}

TEST_CASE("constants are continuous in alpha (no jumps on the grid)") {
    auto smooth_scan = [](const std::vector<double>& vals) {
        for (std::size_t i = 2; i + 1 < vals.size(); ++i) {
            const double jump = std::abs(vals[i + 1] - vals[i]);
            const double local =
                0.5 * (std::abs(vals[i] - vals[i - 1]) + std::abs(vals[i - 1] - vals[i - 2]));
            CHECK(jump <= 10.0 * local + 1e-9);
        }
    };
    for (int n : {1, 2, 3}) {
        std::vector<double> ks, ss;
        for (double a = 1.05; a <= 1.95; a += 0.01) {
            ks.push_back(kappa(n, a));
            ss.push_back(sphere_alpha_integral(n, a));
        }
        smooth_scan(ks);
        smooth_scan(ss);
    }
}
