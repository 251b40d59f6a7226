#include "frachardy/hardy.hpp"

#include <algorithm>
#include <cmath>

namespace frachardy {

namespace {

inline double powp(double x, double p) {
    x = std::abs(x);
    if (p == 2.0) return x * x;
    if (p == 3.0) return x * x * x;
    return std::pow(x, p);
}

const Interval& as_interval(const Domain& dom, const char* who) {
    if (const auto* iv = std::get_if<Interval>(&dom.shape)) return *iv;
    throw ParamError(std::string(who) + ": needs an interval domain");
}

} // namespace

std::string weight_kind_name(WeightKind k) {
    switch (k) {
        case WeightKind::MAlpha: return "m_alpha";
        case WeightKind::ConvexTwoSided: return "convex_two_sided";
        case WeightKind::Dist: return "dist";
        case WeightKind::MSmall: return "m_small";
        case WeightKind::OneDTwoSided: return "one_d_two_sided";
        case WeightKind::OneDUnion: return "one_d_union";
        case WeightKind::MinDist: return "min_dist";
        case WeightKind::HalfLine: return "half_line";
    }
    return "?";
}

WeightKind weight_kind_from_name(const std::string& name) {
    for (WeightKind k :
         {WeightKind::MAlpha, WeightKind::ConvexTwoSided, WeightKind::Dist, WeightKind::MSmall,
          WeightKind::OneDTwoSided, WeightKind::OneDUnion, WeightKind::MinDist,
          WeightKind::HalfLine})
        if (weight_kind_name(k) == name) return k;
    throw ParamError("unknown weight kind \"" + name + "\"");
}

double kind_factor(WeightKind k) {
    switch (k) {
        case WeightKind::Dist:
        case WeightKind::MSmall: return 1.0;
        default: return 0.5;
    }
}

double kind_constant(WeightKind k, int n, double alpha, double p) {
    switch (k) {
        case WeightKind::MAlpha:
        case WeightKind::ConvexTwoSided: return kappa(n, alpha);
        case WeightKind::OneDTwoSided:
        case WeightKind::OneDUnion:
        case WeightKind::HalfLine: return kappa(1, alpha);
        case WeightKind::Dist:
        case WeightKind::MSmall: return fs_constant(n, p, alpha);
        case WeightKind::MinDist: return fs_constant(1, p, alpha);
    }
    return 0.0;
}

void check_kind(WeightKind k, const Domain& dom, double alpha, double p) {
    auto need_quadratic = [&]() {
        if (p != 2.0) throw ParamError("weight kind needs p = 2");
        if (!(alpha > 1.0) || !(alpha < 2.0))
            throw ParamError("weight kind needs alpha in (1, 2)");
    };
    auto need_p_window = [&]() {
        if (!(p > 1.0)) throw ParamError("weight kind needs p > 1");
        if (!(alpha > 1.0) || !(alpha < p))
            throw ParamError("weight kind needs alpha in (1, p)");
    };
    switch (k) {
        case WeightKind::MAlpha: need_quadratic(); break;
        case WeightKind::ConvexTwoSided:
            need_quadratic();
            if (!dom.is_convex()) throw ParamError("convex_two_sided: domain must be convex");
            break;
        case WeightKind::Dist:
            need_p_window();
            if (!dom.is_convex() && dom.n != 1)
                throw ParamError("dist: domain must be convex (or an open subset of the line)");
            break;
        case WeightKind::MSmall: need_p_window(); break;
        case WeightKind::OneDTwoSided:
            need_quadratic();
            as_interval(dom, "one_d_two_sided");
            break;
        case WeightKind::OneDUnion:
            need_quadratic();
            if (dom.n != 1) throw ParamError("one_d_union: needs a 1-D domain");
            break;
        case WeightKind::MinDist:
            need_p_window();
            as_interval(dom, "min_dist");
            break;
        case WeightKind::HalfLine: {
            need_quadratic();
            if (dom.n != 1 || !std::holds_alternative<HalfSpace>(dom.shape))
                throw ParamError("half_line: needs the 1-D half-line domain");
            break;
        }
    }
}

std::vector<double> weight_field(const Domain& dom, double alpha, double p, WeightKind kind,
                                 const SphereQuadrature* quad, const std::vector<Vec>& points) {
    check_kind(kind, dom, alpha, p);
    if ((kind == WeightKind::MAlpha || kind == WeightKind::MSmall) && !quad)
        throw ParamError("weight_field: this kind needs a sphere quadrature");
    std::vector<double> out;
    out.reserve(points.size());
    for (const Vec& x : points) {
        double w = 0.0;
        switch (kind) {
            case WeightKind::MAlpha: w = m_weight(dom, x, alpha, *quad, true); break;
            case WeightKind::MSmall: w = m_weight(dom, x, alpha, *quad, false); break;
            case WeightKind::ConvexTwoSided: w = convex_weight(dom, x, alpha); break;
            case WeightKind::Dist:
                w = std::pow(dist_to_boundary(dom, x), -alpha);
                break;
            case WeightKind::OneDTwoSided: {
                const auto& iv = as_interval(dom, "one_d_two_sided");
                w = std::pow(1.0 / (x[0] - iv.a) + 1.0 / (iv.b - x[0]), alpha);
                break;
            }
            case WeightKind::OneDUnion: {
                const DirDist dd = dir_dist(dom, x, {1.0, 0.0, 0.0});
                const double second = std::isinf(dd.delta_w) ? 0.0 : 1.0 / dd.delta_w;
                w = std::pow(1.0 / dd.d_w + second, alpha);
                break;
            }
            case WeightKind::MinDist: {
                const auto& iv = as_interval(dom, "min_dist");
                w = std::pow(std::min(x[0] - iv.a, iv.b - x[0]), -alpha);
                break;
            }
            case WeightKind::HalfLine:
                w = std::pow(dist_to_boundary(dom, x), -alpha);
                break;
        }
        out.push_back(w);
    }
    return out;
}

double quotient(const GridFunction& f, const Domain& dom, double alpha, double p,
                WeightKind kind, const SphereQuadrature* quad, const EnergyOptions& opts) {
    check_kind(kind, dom, alpha, p);
    std::vector<Vec> pts;
    std::vector<double> fv;
    for (int k = 0; k < f.dims[2]; ++k)
        for (int j = 0; j < f.dims[1]; ++j)
            for (int i = 0; i < f.dims[0]; ++i) {
                const double v = f.values[f.index(i, j, k)];
                if (v == 0.0) continue;
                pts.push_back(f.node(i, j, k));
                fv.push_back(v);
            }
    if (pts.empty()) throw ParamError("quotient: trial function is identically zero");

    const std::vector<double> w = weight_field(dom, alpha, p, kind, quad, pts);
    double denom = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) denom += powp(fv[i], p) * w[i];
    denom *= std::pow(f.h, f.n);
    if (!(denom > 0.0)) throw ParamError("quotient: weighted norm vanished");

    const double E = gagliardo_direct(f, dom, p, alpha, opts).value;
    return kind_factor(kind) * E / denom;
}

std::vector<VerificationReport> verify(const Domain& dom, double alpha, double p,
                                       WeightKind kind,
                                       const std::vector<GridFunction>& family,
                                       const VerifyOptions& opts) {
    if (family.empty()) throw ParamError("verify: empty trial family");
    check_kind(kind, dom, alpha, p);
    const double constant = kind_constant(kind, dom.n, alpha, p) * opts.constant_scale;
    if (!(constant > 0.0))
        throw ParamError("verify: theoretical constant is degenerate for these parameters");
    std::vector<VerificationReport> reports;
    int id = 0;
    for (const auto& f : family) {
        VerificationReport r;
        r.kind = weight_kind_name(kind);
        r.trial_id = "trial_" + std::to_string(id++);
        r.n = dom.n;
        r.alpha = alpha;
        r.p = p;
        r.constant = constant;
        r.tol = opts.tol;
        r.h = f.h;
        r.sphere_resolution = opts.quad ? opts.quad->resolution : 0;
        EnergyOptions eo = opts.energy;
        eo.estimate_error = false;
        r.quotient = quotient(f, dom, alpha, p, kind, opts.quad, eo);
        if (opts.estimate_errors) {
            EnergyOptions ee = opts.energy;
            ee.estimate_error = true;
            const EnergyResult er = gagliardo_direct(f, dom, p, alpha, ee);
            r.energy_error_estimate = er.value > 0.0 ? er.error_estimate / er.value : 0.0;
        }
        r.margin = (r.quotient - constant) / constant;
        r.pass = r.margin >= -opts.tol;
        reports.push_back(std::move(r));
    }
    return reports;
}

SharpnessResult sharpness_probe(double alpha, int k_max, double eta, const EnergyOptions& opts) {
    if (k_max < 1) throw ParamError("sharpness_probe: k_max must be >= 1");
    SharpnessResult out;
    out.kappa_value = kappa(1, alpha);
    for (int k = 1; k <= k_max; ++k) {
        // resolution rule: quotient stable to 1% under eta -> eta/2
        double et = eta;
        HalflineTrial trial = halfline_sharpness_family(alpha, k, et);
        HalflineEnergy he = halfline_log_energy(trial, alpha, opts);
        double q = 0.5 * he.energy / he.weight;
        for (int refine = 0;; ++refine) {
            et *= 0.5;
            trial = halfline_sharpness_family(alpha, k, et);
            he = halfline_log_energy(trial, alpha, opts);
            const double q2 = 0.5 * he.energy / he.weight;
            const bool stable = std::abs(q2 - q) <= 0.01 * q2;
            q = q2;
            if (stable) break;
            if (refine >= 3)
                throw NonConvergenceError("sharpness_probe: log-lattice refinement cap hit");
        }
        out.quotients.push_back(q);
    }
    out.final_gap = (out.quotients.back() - out.kappa_value) / out.kappa_value;
    return out;
}

double remainder(double x, double alpha) {
    if (!(alpha > 1.0) || !(alpha < 2.0))
        throw ParamError("remainder: alpha must lie in (1, 2)");
    if (x < 0.0 || x > 1.0) throw ParamError("remainder: x must lie in [0, 1]");
    return 1.0 - std::pow(x, alpha) - std::pow(1.0 - x, alpha);
}

VerificationReport fs_inequality_check(double p, double alpha, const std::vector<double>& xs,
                                       double tol, int resolution) {
    if (xs.empty()) throw ParamError("fs_inequality_check: empty grid");
    const double D = fs_constant(1, p, alpha);
    VerificationReport r;
    r.kind = "fs_potential";
    r.trial_id = "grid_" + std::to_string(xs.size());
    r.n = 1;
    r.alpha = alpha;
    r.p = p;
    r.constant = D;
    r.tol = tol;
    double min_margin = kInf;
    double min_ratio = kInf;
    for (double x : xs) {
        const double V = fs_potential(x, p, alpha, resolution);
        const double bound = D / std::pow(x, alpha);
        const double margin = (V - bound) / bound;
        if (margin < min_margin) {
            min_margin = margin;
            min_ratio = V / bound;
        }
    }
    r.quotient = min_ratio;
    r.margin = min_margin;
    r.pass = min_margin >= -tol;
    return r;
}

} // namespace frachardy
