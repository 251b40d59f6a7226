#include "frachardy/sphere.hpp"
#include "frachardy/errors.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>

namespace frachardy {

namespace {

// Gauss-Legendre nodes/weights on [0, 1] by Newton iteration on P_n.
void gauss_legendre_01(int m, std::vector<double>& x, std::vector<double>& w) {
    x.assign(m, 0.0);
    w.assign(m, 0.0);
    for (int i = 0; i < m; ++i) {
        // initial guess on [-1,1]
        double z = std::cos(M_PI * (i + 0.75) / (m + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < m; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = m * (z * p0 - p1) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p0 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        x[i] = 0.5 * (1.0 - z); // map to [0,1], ascending later
        w[i] = 1.0 / ((1.0 - z * z) * pp * pp);
    }
}

} // namespace

double SphereQuadrature::total_weight() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

bool SphereQuadrature::antipodally_symmetric(double tol) const {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        bool found = false;
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            double d = 0.0;
            for (int k = 0; k < n; ++k) d += std::abs(nodes[i][k] + nodes[j][k]);
            if (d < tol && std::abs(weights[i] - weights[j]) < tol) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

SphereQuadrature build_sphere_quadrature(int n, int resolution) {
    if (n < 1 || n > 3)
        throw ParamError("build_sphere_quadrature: dimension must be 1, 2 or 3");
    SphereQuadrature q;
    q.n = n;
    q.resolution = resolution;
    if (n == 1) {
        q.nodes = {{1.0, 0.0, 0.0}, {-1.0, 0.0, 0.0}};
        q.weights = {1.0, 1.0};
        return q;
    }
    if (n == 2) {
        int N = std::max(8, resolution);
        if (N % 2) ++N; // even count keeps the set antipodal and off the axes
        const double w = 2.0 * M_PI / N;
        for (int j = 0; j < N; ++j) {
            const double th = 2.0 * M_PI * (j + 0.5) / N;
            q.nodes.push_back({std::cos(th), std::sin(th), 0.0});
            q.weights.push_back(w);
        }
        return q;
    }
    // n == 3: u = cos(theta) Gauss-Legendre on (0,1] mirrored to [-1,0),
    // azimuth midpoint rule with even count.
    int M = std::max(8, resolution);
    if (M % 2) ++M;
    const int mu = std::max(4, resolution / 2);
    std::vector<double> ux, uw;
    gauss_legendre_01(mu, ux, uw);
    const double wphi = 2.0 * M_PI / M;
    for (int s = 0; s < 2; ++s) {
        const double sign = s ? -1.0 : 1.0;
        for (int i = 0; i < mu; ++i) {
            const double u = sign * ux[i];
            const double rho = std::sqrt(std::max(0.0, 1.0 - u * u));
            for (int j = 0; j < M; ++j) {
                const double phi = 2.0 * M_PI * (j + 0.5) / M;
                q.nodes.push_back({rho * std::cos(phi), rho * std::sin(phi), u});
                q.weights.push_back(uw[i] * wphi);
            }
        }
    }
    return q;
}

SphereQuadrature cached_sphere_quadrature(int n, int resolution) {
    const char* dir = std::getenv("FRAC_HARDY_CACHE");
    if (!dir || !*dir) return build_sphere_quadrature(n, resolution);

    namespace fs = std::filesystem;
    fs::path path = fs::path(dir) / ("sphere_n" + std::to_string(n) + "_res" +
                                     std::to_string(resolution) + ".bin");
    if (fs::exists(path)) {
        std::ifstream in(path, std::ios::binary);
        std::uint64_t count = 0;
        in.read(reinterpret_cast<char*>(&count), sizeof(count));
        SphereQuadrature q;
        q.n = n;
        q.resolution = resolution;
        q.nodes.resize(count);
        q.weights.resize(count);
        in.read(reinterpret_cast<char*>(q.nodes.data()), count * sizeof(q.nodes[0]));
        in.read(reinterpret_cast<char*>(q.weights.data()), count * sizeof(double));
        if (in) return q;
        // fall through to rebuild on a short read
    }
    SphereQuadrature q = build_sphere_quadrature(n, resolution);
    std::error_code ec;
    fs::create_directories(dir, ec);
    std::ofstream out(path, std::ios::binary);
    if (out) {
        const std::uint64_t count = q.nodes.size();
        out.write(reinterpret_cast<const char*>(&count), sizeof(count));
        out.write(reinterpret_cast<const char*>(q.nodes.data()), count * sizeof(q.nodes[0]));
        out.write(reinterpret_cast<const char*>(q.weights.data()), count * sizeof(double));
    }
    return q;
}

} // namespace frachardy
