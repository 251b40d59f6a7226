#ifndef FRACHARDY_TRIAL_FAMILY_HPP
#define FRACHARDY_TRIAL_FAMILY_HPP

#include <vector>

namespace frachardy {

// C-infinity step: 0 for t <= 0, 1 for t >= 1.
double smoothstep(double t);

// Half-line trial function sampled on a log-uniform lattice t_i = t0 + i eta,
// value_i = u(e^{t_i}). The half-line Hardy quotient is scale invariant, and
// the near-optimal trial functions spread over many decades; a lattice uniform
// in log x resolves all of them at once.
struct HalflineTrial {
    double t0 = 0.0;
    double eta = 0.0;
    std::vector<double> values;
    double epsilon = 0.0; // envelope decay rate in log scale
};

// Member k of the sharpness family for the half-line inequality:
//   u_k(x) = x^{(alpha-1)/2} g_k(ln x),
//   g_k(t)  = exp(-eps_k |t|) with smooth ramps to zero over two e-folds,
//   eps_k   = 0.32 / k^{3/2}, envelope truncated at amplitude 0.05.
// Quotients against the x^{-alpha} weight decrease to the sharp constant as
// the envelope flattens and widens.
HalflineTrial halfline_sharpness_family(double alpha, int k, double eta = 0.02);

} // namespace frachardy

#endif
