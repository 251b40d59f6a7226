#include "frachardy/trial_family.hpp"
#include "frachardy/errors.hpp"

#include <cmath>

namespace frachardy {

double smoothstep(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / t);
    const double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

HalflineTrial halfline_sharpness_family(double alpha, int k, double eta) {
    if (!(alpha > 1.0) || !(alpha < 2.0))
        throw ParamError("halfline_sharpness_family: alpha must lie in (1, 2)");
    if (k < 1) throw ParamError("halfline_sharpness_family: index must be >= 1");
    if (!(eta > 0.0)) throw ParamError("halfline_sharpness_family: eta must be positive");

    const double eps = 0.32 / std::pow(static_cast<double>(k), 1.5);
    const double theta = 0.05; // envelope amplitude at the start of the ramps
    const double ramp = 2.0;   // e-folds per ramp
    const double T = std::log(1.0 / theta) / eps;
    const double Tfull = T + ramp;

    HalflineTrial trial;
    trial.eta = eta;
    trial.t0 = -Tfull;
    trial.epsilon = eps;
    const int count = static_cast<int>(std::ceil(2.0 * Tfull / eta)) + 1;
    trial.values.resize(count);
    const double beta = 0.5 * (alpha - 1.0);
    for (int i = 0; i < count; ++i) {
        const double t = trial.t0 + i * eta;
        const double g = std::exp(-eps * std::abs(t)) * smoothstep((Tfull - t) / ramp) *
                         smoothstep((Tfull + t) / ramp);
        trial.values[i] = std::exp(beta * t) * g;
    }
    trial.values.front() = 0.0;
    trial.values.back() = 0.0;
    return trial;
}

} // namespace frachardy
