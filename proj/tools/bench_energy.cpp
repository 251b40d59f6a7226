// Benchmark comparing the serial reference kernels against the blocked
// OpenMP kernels across problem sizes. Prints a CSV table.

#include "frachardy/domain.hpp"
#include "frachardy/energy.hpp"
#include "frachardy/grid_function.hpp"

#include <omp.h>

#include <cstdio>
#include <ctime>

using namespace frachardy;

namespace {

double wall_seconds() {
    timespec ts;
    clock_gettime(CLOCK_MONOTONIC, &ts);
    return static_cast<double>(ts.tv_sec) + 1e-9 * static_cast<double>(ts.tv_nsec);
}

template <class F>
double time_best_of(int reps, F&& fn) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const double t0 = wall_seconds();
        fn();
        best = std::min(best, wall_seconds() - t0);
    }
    return best;
}

} // namespace

int main() {
    const int max_threads = omp_get_max_threads();
    std::printf("# frachardy energy kernels: serial reference vs blocked OpenMP\n");
    std::printf("kernel,size,serial_s,blocked1_s,blockedN_s,threads,speedup,rel_diff\n");

    // 1-D pair sum
    for (int nsamp : {2000, 8000, 20000}) {
        GridFunction f = sample_bump({{0.5, 0, 0}, 0.4, 1.0}, make_interval(0, 1),
                                     1.0 / (nsamp - 1));
        EnergyOptions ser;
        ser.reference = true;
        EnergyOptions b1;
        b1.workers = 1;
        EnergyOptions bn;
        bn.workers = max_threads;
        double es = 0, e1 = 0, en = 0;
        const double ts = time_best_of(3, [&] { es = oneD_energy(f.values, f.h, 2.0, 1.5, ser); });
        const double t1 = time_best_of(3, [&] { e1 = oneD_energy(f.values, f.h, 2.0, 1.5, b1); });
        const double tn = time_best_of(3, [&] { en = oneD_energy(f.values, f.h, 2.0, 1.5, bn); });
        std::printf("one_d,%d,%.4f,%.4f,%.4f,%d,%.2f,%.2e\n", nsamp, ts, t1, tn, max_threads,
                    ts / tn, std::abs(es - en) / es);
    }

    // 2-D direct pair sum
    for (int res : {32, 48, 64}) {
        Domain box = make_box(2, {0, 0, 0}, {1, 1, 0});
        GridFunction f = sample_bump({{0.5, 0.5, 0}, 0.3, 1.0}, box, 1.0 / res);
        EnergyOptions ser;
        ser.reference = true;
        EnergyOptions bn;
        bn.workers = max_threads;
        double es = 0, en = 0;
        const double ts =
            time_best_of(2, [&] { es = gagliardo_direct(f, box, 2.0, 1.5, ser).value; });
        const double tn =
            time_best_of(2, [&] { en = gagliardo_direct(f, box, 2.0, 1.5, bn).value; });
        std::printf("direct_2d,%d,%.4f,%.4f,%.4f,%d,%.2f,%.2e\n", res, ts, ts, tn, max_threads,
                    ts / tn, std::abs(es - en) / es);
    }

    // reduced path
    {
        Domain box = make_box(2, {0, 0, 0}, {1, 1, 0});
        GridFunction f = sample_bump({{0.5, 0.5, 0}, 0.3, 1.0}, box, 1.0 / 48);
        auto quad = build_sphere_quadrature(2, 128);
        EnergyOptions ser;
        ser.reference = true;
        EnergyOptions bn;
        bn.workers = max_threads;
        double es = 0, en = 0;
        const double ts = time_best_of(
            2, [&] { es = gagliardo_reduced(f, box, 2.0, 1.5, quad, f.h, ser).value; });
        const double tn = time_best_of(
            2, [&] { en = gagliardo_reduced(f, box, 2.0, 1.5, quad, f.h, bn).value; });
        std::printf("reduced_2d,%d,%.4f,%.4f,%.4f,%d,%.2f,%.2e\n", 48, ts, ts, tn, max_threads,
                    ts / tn, std::abs(es - en) / es);
    }
    return 0;
}
